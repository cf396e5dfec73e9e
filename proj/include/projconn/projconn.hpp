#ifndef PROJCONN_PROJCONN_HPP_
#define PROJCONN_PROJCONN_HPP_

#include "projconn/connection.hpp"
#include "projconn/diff_poly.hpp"
#include "projconn/error.hpp"
#include "projconn/expr.hpp"
#include "projconn/families.hpp"
#include "projconn/gaussian_rational.hpp"
#include "projconn/geodesic.hpp"
#include "projconn/projective.hpp"
#include "projconn/spec_file.hpp"
#include "projconn/symbol.hpp"
#include "projconn/tensor.hpp"

#endif // PROJCONN_PROJCONN_HPP_
