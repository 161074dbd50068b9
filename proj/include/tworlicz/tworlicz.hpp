#pragma once

#include "tworlicz/errors.hpp"
#include "tworlicz/numerics.hpp"
#include "tworlicz/young.hpp"
#include "tworlicz/lattice.hpp"
#include "tworlicz/orlicz.hpp"
#include "tworlicz/twist.hpp"
#include "tworlicz/criteria.hpp"
#include "tworlicz/appendix_a.hpp"
#include "tworlicz/io.hpp"
