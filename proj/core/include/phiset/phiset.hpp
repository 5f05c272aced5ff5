#pragma once

#include "phiset/classes.hpp"
#include "phiset/errors.hpp"
#include "phiset/finspace.hpp"
#include "phiset/hausdorff.hpp"
#include "phiset/limits.hpp"
#include "phiset/maps.hpp"
#include "phiset/set_class.hpp"
#include "phiset/subset_mask.hpp"
#include "phiset/transfer.hpp"
