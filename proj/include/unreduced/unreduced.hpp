#pragma once

#include "builders.hpp"
#include "core.hpp"
#include "diagrams.hpp"
#include "exchange.hpp"
#include "formats.hpp"
#include "io.hpp"
#include "parallel.hpp"
#include "pipeline.hpp"
#include "synth.hpp"
#include "vectorize.hpp"
