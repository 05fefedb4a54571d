#pragma once

#include "shqr/driver.hpp"
#include "shqr/iqr.hpp"
#include "shqr/matrix_market.hpp"
#include "shqr/numkernel.hpp"
#include "shqr/params.hpp"
#include "shqr/ritz.hpp"
#include "shqr/shifting.hpp"
