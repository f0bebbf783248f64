#ifndef EULERSUM_EULERSUM_HPP
#define EULERSUM_EULERSUM_HPP

#include "eulersum/closedform.hpp"
#include "eulersum/errors.hpp"
#include "eulersum/exact.hpp"
#include "eulersum/io.hpp"
#include "eulersum/numerics.hpp"
#include "eulersum/oracle.hpp"
#include "eulersum/relations.hpp"
#include "eulersum/sum_id.hpp"
#include "eulersum/symexpr.hpp"

#endif  // EULERSUM_EULERSUM_HPP
