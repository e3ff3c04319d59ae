#pragma once

#include "zetagap/combinatorics.hpp"
#include "zetagap/config_io.hpp"
#include "zetagap/euler_product.hpp"
#include "zetagap/gap_ratio.hpp"
#include "zetagap/moments.hpp"
#include "zetagap/numeric.hpp"
#include "zetagap/optimizer.hpp"
#include "zetagap/parallel.hpp"
#include "zetagap/polynomial.hpp"
#include "zetagap/verify.hpp"
