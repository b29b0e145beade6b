#pragma once

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>

namespace pairgen::numeric {

inline double bessel_j(int nu, double x) { return boost::math::cyl_bessel_j(static_cast<double>(nu), x); }
inline double bessel_j_prime(int nu, double x) { return boost::math::cyl_bessel_j_prime(static_cast<double>(nu), x); }
inline double bessel_k(int nu, double x) { return boost::math::cyl_bessel_k(static_cast<double>(nu), x); }
inline double bessel_k_prime(int nu, double x) { return boost::math::cyl_bessel_k_prime(static_cast<double>(nu), x); }
inline double bessel_j_zero(int nu, int k) { return boost::math::cyl_bessel_j_zero(static_cast<double>(nu), k); }

} // namespace pairgen::numeric
