// phcli: filtered complexes -> persistence diagrams -> feature vectors.
//
// Exit codes: 0 success, 1 runtime or I/O failure, 2 usage error.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#ifdef UNREDUCED_CLI11_PACKAGE
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <sys/resource.h>

#include <unreduced/unreduced.hpp>

namespace fs = std::filesystem;
using namespace unreduced;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t resolve_threads(std::size_t flag) {
  if (const char* env = std::getenv("PHCLI_THREADS")) {
    std::int64_t v;
    if (!io::parse_int(env, v) || v < 1) throw UsageError("PHCLI_THREADS must be a positive integer");
    return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(flag, 1);
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

std::vector<DiagramKind> parse_kinds(const std::string& text) {
  std::vector<DiagramKind> kinds;
  if (text == "all") return {std::begin(kAllKinds), std::end(kAllKinds)};
  for (auto part : io::split(text, ',')) {
    auto k = parse_diagram_kind(part);
    if (!k) throw UsageError("unknown diagram kind '" + std::string(part) + "' (fr, nnb, ap, l1)");
    if (std::find(kinds.begin(), kinds.end(), *k) == kinds.end()) kinds.push_back(*k);
  }
  if (kinds.empty()) throw UsageError("no diagram kind given");
  return kinds;
}

EssentialPolicy parse_essential(const std::string& text) {
  if (text == "drop") return EssentialPolicy::drop();
  if (text == "inf") return EssentialPolicy::capped(std::numeric_limits<double>::infinity());
  if (text.rfind("cap:", 0) == 0) {
    double v;
    if (!io::parse_double(std::string_view(text).substr(4), v)) throw UsageError("bad essential cap");
    return EssentialPolicy::capped(v);
  }
  throw UsageError("--essential must be drop, cap:<value> or inf");
}

// ---------------------------------------------------------------------------
// Entry sources shared by `diagram`, `bench` and `export-complex`.

struct InputOptions {
  std::string input;
  std::string manifest;
  std::string idx_images;
  std::string idx_labels;
  std::size_t limit = 0;
  std::string filtration;
  std::string edges;
  std::string threshold = "auto";
  int max_dim = 2;
  double activity_threshold = 0.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("-i,--input", input, "Point cloud CSV, image CSV or .phc complex");
    cmd->add_option("--manifest", manifest, "Dataset manifest written by `dataset`");
    cmd->add_option("--idx", idx_images, "IDX image file (e.g. f-MNIST)");
    cmd->add_option("--idx-labels", idx_labels, "IDX label file matching --idx");
    cmd->add_option("--limit", limit, "Read at most this many IDX images (0 = all)");
    cmd->add_option("--filtration", filtration,
                    "rips | sweep[:NESW] | lower-star | height[:axis] | complex");
    cmd->add_option("--edges", edges, "Edge list CSV for the height filtration");
    cmd->add_option("--max-dim", max_dim, "Largest Rips simplex dimension")->check(CLI::NonNegativeNumber);
    cmd->add_option("--threshold", threshold, "Rips threshold or `auto`");
    cmd->add_option("--activity-threshold", activity_threshold,
                    "Sweep: pixels above this intensity are active");
  }
};

struct Entry {
  std::string name;
  int label = 0;
  std::function<std::vector<SourcedComplex>()> build;
};

enum class InputType { cloud, image, complex };

FiltrationSpec filtration_for(const InputOptions& opt, InputType type) {
  std::string text = opt.filtration;
  if (text.empty()) text = type == InputType::complex ? "complex" : type == InputType::image ? "sweep" : "rips";
  FiltrationSpec spec;
  try {
    spec = parse_filtration(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  spec.max_dim = opt.max_dim;
  spec.activity_threshold = opt.activity_threshold;
  if (opt.threshold != "auto") {
    double t;
    if (!io::parse_double(opt.threshold, t) || !(t > 0)) throw UsageError("--threshold must be > 0 or auto");
    spec.threshold = t;
  }
  return spec;
}

InputType input_type_of(const InputOptions& opt, const std::string& path) {
  if (fs::path(path).extension() == ".phc") return InputType::complex;
  if (!opt.filtration.empty()) {
    auto head = opt.filtration.substr(0, opt.filtration.find(':'));
    if (head == "sweep" || head == "lower-star") return InputType::image;
    if (head == "complex") return InputType::complex;
  }
  return InputType::cloud;
}

std::function<std::vector<SourcedComplex>()> builder_for_file(const InputOptions& opt,
                                                               const std::string& path) {
  const auto type = input_type_of(opt, path);
  const auto spec = filtration_for(opt, type);
  if (type == InputType::complex) {
    if (spec.type != FiltrationSpec::Type::complex) {
      throw UsageError("exchange-format input requires --filtration complex");
    }
    return [path] { return std::vector<SourcedComplex>{{"complex", import_complex(path)}}; };
  }
  if (type == InputType::image) {
    return [path, spec] { return complexes_from_image(read_image_csv(path), spec); };
  }
  if (spec.type == FiltrationSpec::Type::height) {
    if (opt.edges.empty()) throw UsageError("--filtration height needs --edges");
    auto edges_path = opt.edges;
    return [path, edges_path, spec] {
      auto cloud = read_point_cloud(path);
      auto edges = read_edge_list(edges_path);
      return std::vector<SourcedComplex>{{"height", build_height_graph(cloud, edges, spec.axis)}};
    };
  }
  if (spec.type != FiltrationSpec::Type::rips) {
    throw UsageError("point-cloud input supports --filtration rips or height");
  }
  return [path, spec] { return complexes_from_cloud(read_point_cloud(path), spec); };
}

std::vector<Entry> collect_entries(const InputOptions& opt) {
  int given = !opt.input.empty() + !opt.manifest.empty() + !opt.idx_images.empty();
  if (given != 1) throw UsageError("give exactly one of --input, --manifest, --idx");
  std::vector<Entry> entries;
  if (!opt.input.empty()) {
    if (!fs::exists(opt.input)) throw IoError("input not found: " + opt.input);
    entries.push_back({fs::path(opt.input).stem().string(), 0, builder_for_file(opt, opt.input)});
  } else if (!opt.manifest.empty()) {
    auto manifest = parse_manifest(io::read_file(opt.manifest), opt.manifest);
    auto dir = fs::path(opt.manifest).parent_path();
    for (const auto& e : manifest.entries) {
      auto path = (dir / e.file).string();
      entries.push_back({fs::path(e.file).stem().string(), e.label, builder_for_file(opt, path)});
    }
  } else {
    auto spec = filtration_for(opt, InputType::image);
    auto images = std::make_shared<std::vector<ImageGrid>>(
        parse_idx_images(io::read_file(opt.idx_images), opt.idx_images, opt.limit));
    std::vector<int> labels(images->size(), 0);
    if (!opt.idx_labels.empty()) {
      labels = parse_idx_labels(io::read_file(opt.idx_labels), opt.idx_labels, opt.limit);
      if (labels.size() != images->size()) throw IoError("IDX label count does not match image count");
    }
    for (std::size_t i = 0; i < images->size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "img_%05zu", i);
      entries.push_back({name, labels[i], [images, i, spec] { return complexes_from_image((*images)[i], spec); }});
    }
  }
  return entries;
}

// ---------------------------------------------------------------------------
// dataset

int cmd_dataset(const std::string& generator, std::size_t per_class, double noise,
                std::uint64_t seed, std::size_t points, const std::string& out) {
  if (generator != "shapes") throw UsageError("unknown dataset generator '" + generator + "'");
  if (per_class < 1) throw UsageError("--per-class must be >= 1");
  if (!(noise >= 0.0)) throw UsageError("--noise must be >= 0");
  if (points < 1) throw UsageError("--points must be >= 1");
  auto data = generate_shape_dataset(per_class, noise, seed, points);
  auto manifest = shape_manifest(data, per_class, noise, seed, points);
  fs::path dir(out);
  ensure_dir(dir);
  for (std::size_t i = 0; i < data.size(); ++i) {
    io::write_file((dir / manifest.entries[i].file).string(), format_point_cloud(data[i].cloud));
  }
  io::write_file((dir / "manifest.json").string(), format_manifest(manifest));
  std::cerr << "wrote " << data.size() << " clouds and manifest.json to " << dir.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// diagram

int cmd_diagram(const InputOptions& in, const std::string& kinds_text, const std::string& ephemeral,
                const std::string& essential, const std::string& out, std::size_t threads) {
  const auto kinds = parse_kinds(kinds_text);
  DiagramOptions options;
  if (ephemeral == "drop") {
    options.ephemeral = EphemeralPolicy::drop;
  } else if (ephemeral == "keep") {
    options.ephemeral = EphemeralPolicy::keep;
  } else {
    throw UsageError("--ephemeral must be keep or drop");
  }
  options.essential = parse_essential(essential);
  auto entries = collect_entries(in);
  fs::path dir(out);
  ensure_dir(dir);
  const bool single = !in.input.empty();
  if (!single) {
    for (auto k : kinds) ensure_dir(dir / to_string(k));
  }
  auto target = [&](std::size_t i, DiagramKind k) {
    return single ? dir / (entries[i].name + "." + to_string(k) + ".csv")
                  : dir / to_string(k) / (entries[i].name + ".csv");
  };

  std::vector<std::vector<PairCount>> counts(entries.size());
  parallel_for(entries.size(), threads, [&](std::size_t i) {
    auto diagrams = entry_diagrams(entries[i].build(), kinds, options, &counts[i]);
    for (auto k : kinds) io::write_file(target(i, k).string(), format_diagram_csv(diagrams.at(k), to_string(k)));
  });

  if (!single) {
    for (auto k : kinds) {
      std::string index = "file,label\n";
      for (const auto& e : entries) index += e.name + ".csv," + std::to_string(e.label) + "\n";
      io::write_file((dir / to_string(k) / "index.csv").string(), index);
    }
  }
  // pair counts per kind/source/degree, summed over entries
  std::map<std::tuple<int, std::string, int>, std::pair<std::size_t, std::size_t>> totals;
  for (const auto& per_entry : counts) {
    for (const auto& c : per_entry) {
      auto& t = totals[{static_cast<int>(c.kind), c.source, c.degree}];
      t.first += c.pairs;
      t.second += c.points;
    }
  }
  for (const auto& [key, t] : totals) {
    std::cerr << to_string(static_cast<DiagramKind>(std::get<0>(key))) << " " << std::get<1>(key)
              << "/" << std::get<2>(key) << ": " << t.first << " pairs, " << t.second << " points kept\n";
  }
  std::cerr << "wrote diagrams for " << entries.size() << " entries to " << dir.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// vectorize

int cmd_vectorize(const std::string& config_path, const std::string& index_path,
                  const std::vector<std::string>& files, int label, const std::string& out,
                  std::string layout_path, std::size_t threads) {
  if (config_path.empty()) throw UsageError("--config is required");
  if (index_path.empty() == files.empty()) throw UsageError("give either --index or diagram files");
  auto cfg = parse_vectorize_config(io::read_file(config_path), config_path);

  std::vector<std::pair<std::string, int>> inputs;
  if (!index_path.empty()) {
    auto dir = fs::path(index_path).parent_path();
    auto text = io::read_file(index_path);
    std::size_t line_no = 0;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
      ++line_no;
      auto t = io::trim(line);
      if (t.empty() || t.front() == '#' || (line_no == 1 && t.starts_with("file,"))) continue;
      auto f = io::split(t, ',');
      std::int64_t lab;
      if (f.size() != 2 || !io::parse_int(f[1], lab)) throw ParseError(index_path, line_no, "expected file,label");
      inputs.emplace_back((dir / std::string(f[0])).string(), static_cast<int>(lab));
    }
  } else {
    for (const auto& f : files) inputs.emplace_back(f, label);
  }

  std::vector<std::string> kind_labels(inputs.size());
  std::vector<FeatureVector> vectors(inputs.size());
  parallel_for(inputs.size(), threads, [&](std::size_t i) {
    const auto& path = inputs[i].first;
    auto text = io::read_file(path);
    auto pos = text.find("kind=");
    if (pos != std::string::npos) kind_labels[i] = text.substr(pos + 5, text.find_first_of(" \n", pos) - pos - 5);
    auto diagrams = parse_diagram_csv(text, path);
    for (const auto& [key, _] : cfg.per_key) {
      bool found = std::any_of(diagrams.begin(), diagrams.end(), [&](const Diagram& d) { return d.key() == key; });
      if (!found) throw IoError(path + ": entry is missing diagram key " + key);
    }
    for (const auto& d : diagrams) {
      if (!cfg.per_key.count(d.key())) throw IoError(path + ": diagram key " + d.key() + " not in config");
    }
    vectors[i] = vectorize_entry(diagrams, cfg.method, cfg.per_key);
  });

  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  std::size_t clamped = 0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (i > 0 && vectors[i].layout != vectors[0].layout) {
      throw IoError(inputs[i].first + ": feature layout differs from " + inputs[0].first);
    }
    clamped += vectors[i].clamped;
    rows.push_back(std::move(vectors[i].values));
    labels.push_back(inputs[i].second);
  }
  const auto& layout = vectors.empty() ? std::vector<LayoutRecord>{} : vectors[0].layout;
  std::string kind = kind_labels.empty() ? "" : kind_labels[0];
  io::write_file(out, format_feature_csv(rows, labels, layout));
  if (layout_path.empty()) layout_path = out + ".layout.json";
  io::write_file(layout_path, format_layout_sidecar(cfg, layout, rows.size(), clamped, kind));
  std::size_t length = rows.empty() ? 0 : rows[0].size();
  std::cerr << "vectorized " << rows.size() << " entries, length " << length << ", clamped " << clamped
            << " values\n";
  return 0;
}

// ---------------------------------------------------------------------------
// bench

std::string bench_csv(const std::vector<BenchRecord>& records, const std::vector<Entry>& entries) {
  std::ostringstream s;
  s << "entry,kind,repeat,build_s,boundary_s,reduce_s,extract_s,vectorize_s,cells,matrix_nnz,pairs,"
       "points,column_additions,peak_column_nnz,feature_length\n";
  s << std::setprecision(9);
  for (const auto& r : records) {
    s << entries[r.entry].name << ',' << to_string(r.kind) << ',' << r.repeat << ',' << r.seconds.build << ','
      << r.seconds.boundary << ',' << r.seconds.reduce << ',' << r.seconds.extract << ','
      << r.seconds.vectorize << ',' << r.cells << ',' << r.matrix_nnz << ',' << r.pairs << ',' << r.points
      << ',' << r.column_additions << ',' << r.peak_column_nnz << ',' << r.feature_length << '\n';
  }
  return s.str();
}

std::string bench_table(const std::vector<StageSummary>& summary, const std::vector<BenchRecord>& records,
                        int repeats) {
  std::ostringstream s;
  s << "stage totals over all entries, mean +- std over " << repeats << " repeat(s), seconds\n";
  s << std::left << std::setw(6) << "kind";
  for (const char* h : {"build", "boundary", "reduce", "extract", "vectorize"}) s << std::setw(24) << h;
  s << std::setw(12) << "pairs/entry" << "peak col\n";
  for (const auto& st : summary) {
    std::size_t peak = 0;
    for (const auto& r : records) {
      if (r.kind == st.kind) peak = std::max(peak, r.peak_column_nnz);
    }
    s << std::setw(6) << to_string(st.kind);
    auto cell = [&](double m, double d) {
      std::ostringstream c;
      c << std::scientific << std::setprecision(3) << m << " +- " << d;
      s << std::setw(24) << c.str();
    };
    cell(st.mean.build, st.stddev.build);
    cell(st.mean.boundary, st.stddev.boundary);
    cell(st.mean.reduce, st.stddev.reduce);
    cell(st.mean.extract, st.stddev.extract);
    cell(st.mean.vectorize, st.stddev.vectorize);
    s << std::setw(12) << std::fixed << std::setprecision(1) << st.mean_pairs << peak << "\n";
  }
  return s.str();
}

int cmd_bench(InputOptions in, const std::string& generator, std::size_t per_class, double noise,
              std::uint64_t seed, std::size_t points, const std::string& kinds_text,
              const std::string& method_text, const std::string& config_path, int repeats,
              const std::string& out, std::size_t threads) {
  if (repeats < 1) throw UsageError("--repeat must be >= 1");
  BenchOptions options;
  options.kinds = parse_kinds(kinds_text);
  auto method = parse_vector_method(method_text);
  if (!method) throw UsageError("--vectorizer must be pi or ac");
  options.method = *method;
  if (!config_path.empty()) {
    auto cfg = parse_vectorize_config(io::read_file(config_path), config_path);
    options.method = cfg.method;
    options.configs = cfg.per_key;
  }

  std::vector<Entry> entries;
  if (!generator.empty()) {
    if (generator != "shapes") throw UsageError("unknown generator '" + generator + "'");
    if (per_class < 1) throw UsageError("--per-class must be >= 1");
    auto spec = filtration_for(in, InputType::cloud);
    if (spec.type != FiltrationSpec::Type::rips) throw UsageError("shape bench uses the rips filtration");
    auto data = std::make_shared<std::vector<LabeledCloud>>(generate_shape_dataset(per_class, noise, seed, points));
    for (std::size_t i = 0; i < data->size(); ++i) {
      entries.push_back({std::string(to_string((*data)[i].shape)) + "_" + std::to_string(i), (*data)[i].label,
                         [data, i, spec] { return complexes_from_cloud((*data)[i].cloud, spec); }});
    }
  } else {
    entries = collect_entries(in);
  }

  std::vector<std::vector<BenchRecord>> per_entry(entries.size() * static_cast<std::size_t>(repeats));
  for (int r = 0; r < repeats; ++r) {
    parallel_for(entries.size(), threads, [&](std::size_t i) {
      per_entry[static_cast<std::size_t>(r) * entries.size() + i] = bench_entry(i, r, entries[i].build, options);
    });
  }
  std::vector<BenchRecord> records;
  for (auto& v : per_entry) records.insert(records.end(), v.begin(), v.end());
  auto summary = summarize(records, repeats);
  if (!out.empty()) io::write_file(out, bench_csv(records, entries));
  std::cout << bench_table(summary, records, repeats);
  // best effort: ru_maxrss is KiB on Linux
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) == 0) {
    std::cout << "peak RSS " << std::fixed << std::setprecision(1) << usage.ru_maxrss / 1024.0 << " MiB\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// export-complex

int cmd_export(const InputOptions& in, const std::string& out) {
  if (in.input.empty()) throw UsageError("export-complex needs --input");
  auto entries = collect_entries(in);
  auto complexes = entries.front().build();
  if (complexes.size() != 1) {
    throw UsageError("filtration yields " + std::to_string(complexes.size()) +
                     " complexes; pick one, e.g. --filtration sweep:E");
  }
  write_complex(out, complexes.front().complex);
  std::cerr << "wrote " << complexes.front().complex.size() << " cells to " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fully reduced and unreduced persistence diagrams, vectorized for machine learning"};
  app.require_subcommand(1);
  std::size_t threads_flag = 1;
  app.add_option("--threads", threads_flag, "Worker threads (PHCLI_THREADS overrides)")
      ->check(CLI::PositiveNumber);

  // dataset
  auto* dataset = app.add_subcommand("dataset", "Generate a synthetic dataset");
  std::string ds_generator = "shapes", ds_out;
  std::size_t ds_per_class = 200, ds_points = 50;
  double ds_noise = 0.0;
  std::uint64_t ds_seed = 0;
  dataset->add_option("generator", ds_generator, "Dataset generator (shapes)")->required();
  dataset->add_option("--per-class", ds_per_class, "Clouds per shape");
  dataset->add_option("--noise", ds_noise, "Perturbation bound mu");
  dataset->add_option("--seed", ds_seed, "Dataset seed");
  dataset->add_option("--points", ds_points, "Points per cloud");
  dataset->add_option("-o,--output", ds_out, "Output directory")->required();

  // diagram
  auto* diagram = app.add_subcommand("diagram", "Compute persistence diagrams");
  InputOptions dg_in;
  dg_in.add_to(diagram);
  std::string dg_kinds = "fr", dg_ephemeral = "drop", dg_essential = "drop", dg_out;
  diagram->add_option("--kind", dg_kinds, "Comma list of fr,nnb,ap,l1 or `all`");
  diagram->add_option("--ephemeral", dg_ephemeral, "keep | drop");
  diagram->add_flag_callback("--drop-ephemeral", [&] { dg_ephemeral = "drop"; }, "Drop zero-persistence pairs");
  diagram->add_flag_callback("--keep-ephemeral", [&] { dg_ephemeral = "keep"; }, "Keep zero-persistence pairs");
  diagram->add_option("--essential", dg_essential, "drop | cap:<value> | inf");
  diagram->add_option("-o,--output", dg_out, "Output directory")->required();
  diagram->add_option("--threads", threads_flag, "Worker threads")->check(CLI::PositiveNumber);

  // vectorize
  auto* vectorize = app.add_subcommand("vectorize", "Vectorize diagram CSVs into a feature matrix");
  std::string vz_config, vz_index, vz_out, vz_layout;
  std::vector<std::string> vz_files;
  int vz_label = 0;
  vectorize->add_option("--config", vz_config, "Vectorizer config file")->required();
  vectorize->add_option("--index", vz_index, "index.csv (file,label) written by `diagram`");
  vectorize->add_option("files", vz_files, "Diagram CSV files, one per entry");
  vectorize->add_option("--label", vz_label, "Label for positional files");
  vectorize->add_option("-o,--output", vz_out, "Feature matrix CSV")->required();
  vectorize->add_option("--layout", vz_layout, "Layout sidecar path (default <output>.layout.json)");
  vectorize->add_option("--threads", threads_flag, "Worker threads")->check(CLI::PositiveNumber);

  // bench
  auto* bench = app.add_subcommand("bench", "Time each pipeline stage per diagram kind");
  InputOptions bn_in;
  bn_in.add_to(bench);
  std::string bn_generator, bn_kinds = "all", bn_method = "pi", bn_config, bn_out;
  std::size_t bn_per_class = 10, bn_points = 50;
  double bn_noise = 0.0;
  std::uint64_t bn_seed = 0;
  int bn_repeat = 1;
  bench->add_option("generator", bn_generator, "Generate entries instead of reading input (shapes)");
  bench->add_option("--per-class", bn_per_class, "Clouds per shape");
  bench->add_option("--noise", bn_noise, "Perturbation bound mu");
  bench->add_option("--seed", bn_seed, "Dataset seed");
  bench->add_option("--points", bn_points, "Points per cloud");
  bench->add_option("--kind", bn_kinds, "Comma list of fr,nnb,ap,l1 or `all`");
  bench->add_option("--vectorizer", bn_method, "pi | ac");
  bench->add_option("--config", bn_config, "Vectorizer config file");
  bench->add_option("--repeat", bn_repeat, "Repeat count for mean/std");
  bench->add_option("-o,--output", bn_out, "Per-entry timing CSV");
  bench->add_option("--threads", threads_flag, "Worker threads")->check(CLI::PositiveNumber);

  // export-complex
  auto* exporter = app.add_subcommand("export-complex", "Write a filtered complex in exchange format");
  InputOptions ex_in;
  ex_in.add_to(exporter);
  std::string ex_out;
  exporter->add_option("-o,--output", ex_out, "Output .phc file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const auto threads = resolve_threads(threads_flag);
    if (dataset->parsed()) return cmd_dataset(ds_generator, ds_per_class, ds_noise, ds_seed, ds_points, ds_out);
    if (diagram->parsed()) return cmd_diagram(dg_in, dg_kinds, dg_ephemeral, dg_essential, dg_out, threads);
    if (vectorize->parsed()) {
      return cmd_vectorize(vz_config, vz_index, vz_files, vz_label, vz_out, vz_layout, threads);
    }
    if (bench->parsed()) {
      return cmd_bench(bn_in, bn_generator, bn_per_class, bn_noise, bn_seed, bn_points, bn_kinds, bn_method,
                       bn_config, bn_repeat, bn_out, threads);
    }
    if (exporter->parsed()) return cmd_export(ex_in, ex_out);
  } catch (const UsageError& e) {
    std::cerr << "phcli: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "phcli: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
