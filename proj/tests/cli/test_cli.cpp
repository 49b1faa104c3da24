// End-to-end runs of the phcli binary.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <random>

#include <nlohmann/json.hpp>

#include <unreduced/unreduced.hpp>

namespace fs = std::filesystem;
using namespace unreduced;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("phcli_") + info->name() + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override {
    if (!HasFailure()) fs::remove_all(dir_);
  }

  // Exit status of `phcli args`; stderr lands in err().
  int run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " " + PHCLI_PATH + " " + args + " > " + (dir_ / "stdout.txt").string() + " 2> " +
                      (dir_ / "stderr.txt").string();
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string err() const { return io::read_file((dir_ / "stderr.txt").string()); }
  std::string out() const { return io::read_file((dir_ / "stdout.txt").string()); }
  std::string path(const std::string& rel) const { return (dir_ / rel).string(); }
  std::string read(const std::string& rel) const { return io::read_file(path(rel)); }
  void write(const std::string& rel, const std::string& text) const { io::write_file(path(rel), text); }

  fs::path dir_;
};

const char* kTrianglePhc =
    "phc v1 simplicial\n"
    "0 0 0\n0 0 1\n0 0 2\n1 1 0 1\n1 1 0 2\n1 1 1 2\n2 2 0 1 2\n";

std::vector<std::pair<Index, Index>> index_pairs(const std::vector<Diagram>& ds) {
  std::vector<std::pair<Index, Index>> out;
  for (const auto& d : ds) {
    for (const auto& p : d.points) out.emplace_back(p.birth_index, p.death_index);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_F(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("diagram --input x.csv"), 2);  // no -o
}

TEST_F(Cli, TriangleComplexAllKinds) {
  write("tri.phc", kTrianglePhc);
  ASSERT_EQ(run("diagram --input " + path("tri.phc") + " --kind all --keep-ephemeral -o " + path("out")), 0)
      << err();
  auto pairs_of = [&](const char* kind) {
    auto file = "out/tri." + std::string(kind) + ".csv";
    return index_pairs(parse_diagram_csv(read(file), file));
  };
  using P = std::vector<std::pair<Index, Index>>;
  EXPECT_EQ(pairs_of("fr"), (P{{1, 3}, {2, 4}, {5, 6}}));
  EXPECT_EQ(pairs_of("l1"), (P{{1, 3}, {2, 4}, {2, 5}, {5, 6}}));
  EXPECT_EQ(pairs_of("nnb"), (P{{1, 3}, {2, 4}, {5, 6}}));
  EXPECT_EQ(pairs_of("ap"), (P{{2, 4}}));
  EXPECT_NE(err().find("l1 complex/1"), std::string::npos) << err();
}

TEST_F(Cli, MalformedInputNamesTheLine) {
  write("bad.phc", "phc v1 simplicial\n0 0 0\n1 zz 0 1\n");
  EXPECT_EQ(run("diagram --input " + path("bad.phc") + " -o " + path("out")), 1);
  EXPECT_NE(err().find("bad.phc:3"), std::string::npos) << err();
  write("gap.phc", "phc v1 simplicial\n0 0 0\n1 1 0 1\n");
  EXPECT_EQ(run("diagram --input " + path("gap.phc") + " -o " + path("out")), 1);
  EXPECT_NE(err().find("missing face"), std::string::npos) << err();
}

TEST_F(Cli, RipsDropEphemeralLeavesHigherDegreesEmpty) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> v(20 * 3);
  for (auto& x : v) x = u(rng);
  write("cloud.csv", format_point_cloud(PointCloud(3, v)));
  ASSERT_EQ(run("diagram --input " + path("cloud.csv") + " --kind l1,fr --drop-ephemeral -o " + path("out")), 0)
      << err();
  auto l1 = parse_diagram_csv(read("out/cloud.l1.csv"), "l1");
  ASSERT_EQ(l1.size(), 2u);
  EXPECT_EQ(l1[0].points.size(), 190u);  // every edge pairs with a vertex
  EXPECT_TRUE(l1[1].points.empty());
  auto fr = parse_diagram_csv(read("out/cloud.fr.csv"), "fr");
  EXPECT_EQ(fr[0].points.size(), 19u);
}

TEST_F(Cli, DatasetRejectsZeroPerClassAndIsDeterministic) {
  EXPECT_EQ(run("dataset shapes --per-class 0 -o " + path("d0")), 2);
  ASSERT_EQ(run("dataset shapes --per-class 2 --noise 0.1 --seed 4 -o " + path("d1")), 0) << err();
  ASSERT_EQ(run("dataset shapes --per-class 2 --noise 0.1 --seed 4 -o " + path("d2")), 0) << err();
  EXPECT_EQ(read("d1/manifest.json"), read("d2/manifest.json"));
  EXPECT_EQ(read("d1/torus_0001.csv"), read("d2/torus_0001.csv"));
  auto m = parse_manifest(read("d1/manifest.json"), "manifest");
  EXPECT_EQ(m.entries.size(), 10u);
}

TEST_F(Cli, DatasetToFeaturesPipeline) {
  ASSERT_EQ(run("dataset shapes --per-class 2 --points 15 --seed 1 -o " + path("data")), 0) << err();
  ASSERT_EQ(run("diagram --manifest " + path("data/manifest.json") + " --kind fr,l1 -o " + path("dg")), 0)
      << err();
  auto index = read("dg/l1/index.csv");
  EXPECT_EQ(index.rfind("file,label\n", 0), 0u);
  write("ac.cfg", "method = ac\nkeys = rips/0;rips/1\n[default]\nd_max = auto\n");
  ASSERT_EQ(run("vectorize --config " + path("ac.cfg") + " --index " + path("dg/l1/index.csv") + " -o " +
                path("feat.csv")),
            0)
      << err();
  auto rows = io::parse_numeric_csv(read("feat.csv"), "feat");
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows[0].size(), 9u);  // 2 slots * 4 + label
  auto side = nlohmann::json::parse(read("feat.csv.layout.json"));
  EXPECT_EQ(side["length"], 8);
  EXPECT_EQ(side["kind"], "l1");
  EXPECT_EQ(side["entries"], 10);

  // a config naming a key the entries lack fails with that key
  write("ac3.cfg", "method = ac\nkeys = rips/0;rips/1;rips/2\n");
  EXPECT_EQ(run("vectorize --config " + path("ac3.cfg") + " --index " + path("dg/l1/index.csv") + " -o " +
                path("f3.csv")),
            1);
  EXPECT_NE(err().find("rips/2"), std::string::npos) << err();
}

TEST_F(Cli, AcOnThreeDegreesGivesTwelveFeatures) {
  write("cloud.csv", "0,0,0\n1,0,0\n0,1,0\n0,0,1\n1,1,1\n0.5,0.2,0.9\n");
  ASSERT_EQ(run("diagram -i " + path("cloud.csv") + " --max-dim 3 --kind l1 -o " + path("dg")), 0) << err();
  write("ac.cfg", "method = ac\nkeys = rips/0;rips/1;rips/2\n");
  ASSERT_EQ(run("vectorize --config " + path("ac.cfg") + " " + path("dg/cloud.l1.csv") + " -o " + path("f.csv")), 0)
      << err();
  auto rows = io::parse_numeric_csv(read("f.csv"), "f");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].size(), 13u);
  EXPECT_NE(err().find("clamped 0"), std::string::npos) << err();
}

TEST_F(Cli, SweepImageGivesEightHundredFeatures) {
  std::string img;
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) img += std::string(c ? "," : "") + ((r + c) % 3 ? "200" : "0");
    img += "\n";
  }
  write("img.csv", img);
  ASSERT_EQ(run("diagram --input " + path("img.csv") + " --filtration sweep --kind fr -o " + path("dg")), 0)
      << err();
  write("pi.cfg",
        "method = pi\nkeys = sweep:N/0;sweep:N/1;sweep:E/0;sweep:E/1;sweep:S/0;sweep:S/1;sweep:W/0;sweep:W/1\n");
  ASSERT_EQ(run("vectorize --config " + path("pi.cfg") + " " + path("dg/img.fr.csv") + " -o " + path("f.csv")), 0)
      << err();
  auto side = nlohmann::json::parse(read("f.csv.layout.json"));
  EXPECT_EQ(side["length"], 800);
  EXPECT_EQ(side["layout"][0]["source"], "sweep:E");
}

TEST_F(Cli, ThreadCountDoesNotChangeOutput) {
  ASSERT_EQ(run("dataset shapes --per-class 3 --points 15 --noise 0.2 --seed 8 -o " + path("data")), 0);
  ASSERT_EQ(run("diagram --manifest " + path("data/manifest.json") + " --kind all -o " + path("a") +
                " --threads 1"),
            0);
  ASSERT_EQ(run("diagram --manifest " + path("data/manifest.json") + " --kind all -o " + path("b"),
                "PHCLI_THREADS=4"),
            0);
  for (const char* kind : {"fr", "nnb", "ap", "l1"}) {
    for (const auto& e : fs::directory_iterator(dir_ / "a" / kind)) {
      auto rel = fs::relative(e.path(), dir_ / "a").string();
      ASSERT_EQ(read("a/" + rel), read("b/" + rel)) << rel;
    }
  }
}

TEST_F(Cli, BenchReportsZeroReduceForUnreducedKinds) {
  ASSERT_EQ(run("bench shapes --per-class 1 --points 20 --repeat 2 -o " + path("bench.csv")), 0) << err();
  auto text = read("bench.csv");
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  auto header = io::split(line, ',');
  ASSERT_EQ(header[5], "reduce_s");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    auto f = io::split(line, ',');
    ++rows;
    if (f[1] == "fr") {
      EXPECT_GT(std::stod(std::string(f[5])), 0.0) << line;
    } else {
      EXPECT_EQ(f[5], "0") << line;
    }
  }
  EXPECT_EQ(rows, 5u * 4u * 2u);
  EXPECT_NE(out().find("reduce"), std::string::npos);
}

TEST_F(Cli, ExportComplexRoundTrips) {
  write("cloud.csv", "x,y\n0,0\n1,0\n0,1\n");
  ASSERT_EQ(run("export-complex --input " + path("cloud.csv") + " -o " + path("c.phc")), 0) << err();
  auto c = import_complex(path("c.phc"));
  EXPECT_EQ(c.size(), 7u);
  EXPECT_EQ(export_complex(c), read("c.phc"));
}
