#pragma once

// Umbrella header.

#include "psg/central.hpp"
#include "psg/core.hpp"
#include "psg/dynamics.hpp"
#include "psg/error.hpp"
#include "psg/families.hpp"
#include "psg/io.hpp"
#include "psg/largeness.hpp"
#include "psg/partial_semigroup.hpp"
#include "psg/structure.hpp"
#include "psg/subset_mask.hpp"
