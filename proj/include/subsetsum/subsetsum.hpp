// Convenience umbrella for the whole library (the arbitrary-precision
// generator lives in bigseq.hpp and is included separately by its users).
#pragma once

#include "subsetsum/construct.hpp"
#include "subsetsum/errors.hpp"
#include "subsetsum/search.hpp"
#include "subsetsum/sequences.hpp"
#include "subsetsum/sumset.hpp"
#include "subsetsum/verify.hpp"
