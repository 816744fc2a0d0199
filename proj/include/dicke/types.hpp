#pragma once

#include <complex>

#include <Eigen/Dense>

namespace dicke {

using Cplx = std::complex<double>;

// Two-atom pure states and operators live in the product basis
// [|11>, |12>, |21>, |22>], where |ab> means atom 1 in level a and atom 2 in
// level b, with level 1 the ground state and level 2 the excited state.
// Atom 1 is the slow index: |ab> = e_a (x) e_b.
using Vec4 = Eigen::Vector4cd;
using Mat4 = Eigen::Matrix4cd;

// Superoperators act on column-stacked density matrices: vec(rho) is
// column-major (Eigen's native layout), so vec(A rho B) = (B^T (x) A) vec(rho).
using Vec16 = Eigen::Matrix<Cplx, 16, 1>;
using Mat16 = Eigen::Matrix<Cplx, 16, 16>;

// Dicke basis order [|g>, |s>, |a>, |e>]:
//   |g> = |11>,  |s> = (|12> + |21>)/sqrt(2),  |a> = (|12> - |21>)/sqrt(2),
//   |e> = |22>.
inline constexpr int kDickeG = 0;
inline constexpr int kDickeS = 1;
inline constexpr int kDickeA = 2;
inline constexpr int kDickeE = 3;

inline Vec16 vec(const Mat4& m) { return Eigen::Map<const Vec16>(m.data()); }

inline Mat4 unvec(const Vec16& v) { return Eigen::Map<const Mat4>(v.data()); }

}  // namespace dicke
