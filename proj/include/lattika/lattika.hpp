#pragma once

#include "lattika/constructions.hpp"
#include "lattika/elemset.hpp"
#include "lattika/error.hpp"
#include "lattika/filters.hpp"
#include "lattika/generators.hpp"
#include "lattika/harness.hpp"
#include "lattika/io.hpp"
#include "lattika/lattice.hpp"
#include "lattika/s_filters.hpp"
