#pragma once

#include "action.hpp"
#include "characters.hpp"
#include "error.hpp"
#include "io.hpp"
#include "partitions.hpp"
#include "permutations.hpp"
#include "projector_cache.hpp"
#include "sparse.hpp"
#include "statistics.hpp"
#include "transform.hpp"
