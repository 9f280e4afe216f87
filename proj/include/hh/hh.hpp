#pragma once

#include "hh/algebra.hpp"
#include "hh/coeff.hpp"
#include "hh/combinat.hpp"
#include "hh/complex.hpp"
#include "hh/error.hpp"
#include "hh/hochschild/bar.hpp"
#include "hh/hochschild/closed_form.hpp"
#include "hh/hochschild/matchings.hpp"
#include "hh/hochschild/reduced.hpp"
#include "hh/hochschild/transfer.hpp"
#include "hh/linalg.hpp"
#include "hh/morse.hpp"
#include "hh/products.hpp"
#include "hh/sparse_matrix.hpp"
#include "hh/verify.hpp"
