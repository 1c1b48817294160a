#pragma once

// Umbrella header.
#include "sstie/diffusion.hpp"
#include "sstie/error.hpp"
#include "sstie/export.hpp"
#include "sstie/f2f.hpp"
#include "sstie/generate.hpp"
#include "sstie/graph.hpp"
#include "sstie/io.hpp"
#include "sstie/rng.hpp"
#include "sstie/stats.hpp"
#include "sstie/strength.hpp"
#include "sstie/validation.hpp"
