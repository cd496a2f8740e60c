#pragma once

#include "toddsum/bernoulli.hpp"
#include "toddsum/congruence.hpp"
#include "toddsum/dedekind.hpp"
#include "toddsum/expsum.hpp"
#include "toddsum/homogpoly.hpp"
#include "toddsum/io.hpp"
#include "toddsum/lattice.hpp"
#include "toddsum/laurent.hpp"
#include "toddsum/laurentexpand.hpp"
#include "toddsum/multiindex.hpp"
#include "toddsum/rational.hpp"
#include "toddsum/toddcore.hpp"
