#pragma once

// Algebraic curvature tensors in four dimensions: storage, the orthogonal
// decomposition Rm = W + (1/2) Ric0 /\ g + (R/24) g /\ g, Ricci spectra and the
// pinching quantities (R, b, eta, x, y) built from them.
//
// Indices are 0-based in code. Documentation uses the usual 1-based names, so
// R_1212 is operator()(0, 1, 0, 1). Sectional curvatures are R_ijij, and the
// Ricci tensor is the contraction R_ik = sum_j R_ijkj.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "pinchlab/errors.hpp"

namespace pinchlab {

template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;
template <typename Scalar>
using Matrix6 = Eigen::Matrix<Scalar, 6, 6>;

/// Ordered index pairs (12, 13, 14, 23, 24, 34) spanning the 2-forms.
inline constexpr std::array<std::array<int, 2>, 6> kPairs = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

/// Number of independent components of a 4D algebraic curvature tensor.
inline constexpr int kIndependentComponents = 20;

/// Dense 4^4 curvature tensor in an orthonormal frame.
///
/// Every constructor enforces antisymmetry in each index pair, pair symmetry
/// and the first Bianchi identity, so a constructed value is always valid.
template <typename Scalar>
class CurvatureTensor {
 public:
  using Storage = std::array<Scalar, 256>;

  CurvatureTensor() { c_.fill(Scalar(0)); }

  static constexpr int index(int i, int j, int k, int l) {
    return ((i * 4 + j) * 4 + k) * 4 + l;
  }

  /// Builds from the 20 independent components: the upper triangle (A <= B,
  /// row-major) of the 6x6 pair matrix M_AB = R_{P_A P_B} over kPairs, with
  /// the entry (14, 23) omitted. That entry is fixed by Bianchi as
  /// R_1423 = R_1324 - R_1234.
  static CurvatureTensor from_independent(std::span<const Scalar, kIndependentComponents> v) {
    Matrix6<Scalar> m = Matrix6<Scalar>::Zero();
    int n = 0;
    for (int a = 0; a < 6; ++a) {
      for (int b = a; b < 6; ++b) {
        if (a == 2 && b == 3) continue;
        m(a, b) = m(b, a) = v[n++];
      }
    }
    m(2, 3) = m(3, 2) = m(1, 4) - m(0, 5);
    CurvatureTensor t;
    t.assign_pairs(m);
    return t;
  }

  /// Inverse of from_independent.
  std::array<Scalar, kIndependentComponents> independent() const {
    std::array<Scalar, kIndependentComponents> v{};
    int n = 0;
    for (int a = 0; a < 6; ++a) {
      for (int b = a; b < 6; ++b) {
        if (a == 2 && b == 3) continue;
        v[n++] = pair(a, b);
      }
    }
    return v;
  }

  /// Builds from a symmetric pair matrix; throws SymmetryViolation when the
  /// matrix is not symmetric or violates Bianchi beyond tol * max(1, max|M|).
  static CurvatureTensor from_pair_operator(const Matrix6<Scalar>& m, Scalar tol = Scalar(1e-10)) {
    using std::abs;
    const Scalar scale = std::max(Scalar(1), m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
      throw SymmetryViolation("pair operator is not symmetric");
    }
    if (abs(m(2, 3) - m(1, 4) + m(0, 5)) > tol * scale) {
      throw SymmetryViolation("pair operator violates the first Bianchi identity");
    }
    CurvatureTensor t;
    t.assign_pairs(Scalar(0.5) * (m + m.transpose()));
    return t;
  }

  /// Builds from a full component map, validating every symmetry.
  static CurvatureTensor from_components(std::span<const Scalar, 256> full, Scalar tol = Scalar(1e-10)) {
    using std::abs;
    Scalar scale(1);
    for (const Scalar& v : full) scale = std::max(scale, abs(v));
    const Scalar bound = tol * scale;
    auto at = [&](int i, int j, int k, int l) { return full[index(i, j, k, l)]; };
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            const Scalar r = at(i, j, k, l);
            const char* failed = nullptr;
            if (abs(r + at(j, i, k, l)) > bound) failed = "antisymmetry in the first pair";
            else if (abs(r + at(i, j, l, k)) > bound) failed = "antisymmetry in the second pair";
            else if (abs(r - at(k, l, i, j)) > bound) failed = "pair symmetry";
            else if (abs(r + at(i, k, l, j) + at(i, l, j, k)) > bound) failed = "first Bianchi identity";
            if (failed) {
              throw SymmetryViolation(std::string("component R_") + char('1' + i) + char('1' + j) +
                                      char('1' + k) + char('1' + l) + " violates " + failed);
            }
          }
    Matrix6<Scalar> m;
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        m(a, b) = at(kPairs[a][0], kPairs[a][1], kPairs[b][0], kPairs[b][1]);
    CurvatureTensor t;
    t.assign_pairs(m);
    return t;
  }

  Scalar operator()(int i, int j, int k, int l) const { return c_[index(i, j, k, l)]; }
  Scalar pair(int a, int b) const {
    return (*this)(kPairs[a][0], kPairs[a][1], kPairs[b][0], kPairs[b][1]);
  }
  const Storage& data() const { return c_; }

  Matrix6<Scalar> pair_operator() const {
    Matrix6<Scalar> m;
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) m(a, b) = pair(a, b);
    return m;
  }

  Matrix4<Scalar> ricci() const {
    Matrix4<Scalar> ric = Matrix4<Scalar>::Zero();
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j) ric(i, k) += (*this)(i, j, k, j);
    return ric;
  }

  Scalar scalar() const { return ricci().trace(); }

  /// Components in the frame whose a-th vector is column a of q:
  /// R'_abcd = sum Q_ia Q_jb Q_kc Q_ld R_ijkl.
  CurvatureTensor rotated(const Matrix4<Scalar>& q) const {
    Storage cur = c_;
    Storage next;
    // Contract one slot at a time; after four passes every slot is rotated.
    for (int slot = 0; slot < 4; ++slot) {
      next.fill(Scalar(0));
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) {
              std::array<int, 4> out{i, j, k, l};
              Scalar acc(0);
              for (int m = 0; m < 4; ++m) {
                std::array<int, 4> in = out;
                in[slot] = m;
                acc += q(m, out[slot]) * cur[index(in[0], in[1], in[2], in[3])];
              }
              next[index(i, j, k, l)] = acc;
            }
      cur = next;
    }
    CurvatureTensor t;
    t.c_ = cur;
    return t;
  }

  Scalar max_abs() const {
    using std::abs;
    Scalar m(0);
    for (const Scalar& v : c_) m = std::max(m, abs(v));
    return m;
  }

  CurvatureTensor& operator+=(const CurvatureTensor& o) {
    for (std::size_t n = 0; n < c_.size(); ++n) c_[n] += o.c_[n];
    return *this;
  }
  CurvatureTensor& operator-=(const CurvatureTensor& o) {
    for (std::size_t n = 0; n < c_.size(); ++n) c_[n] -= o.c_[n];
    return *this;
  }
  CurvatureTensor& operator*=(Scalar s) {
    for (Scalar& v : c_) v *= s;
    return *this;
  }
  friend CurvatureTensor operator+(CurvatureTensor a, const CurvatureTensor& b) { return a += b; }
  friend CurvatureTensor operator-(CurvatureTensor a, const CurvatureTensor& b) { return a -= b; }
  friend CurvatureTensor operator*(Scalar s, CurvatureTensor a) { return a *= s; }
  friend bool operator==(const CurvatureTensor&, const CurvatureTensor&) = default;

 protected:
  void assign_pairs(const Matrix6<Scalar>& m) {
    c_.fill(Scalar(0));
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) {
        const auto [i, j] = kPairs[a];
        const auto [k, l] = kPairs[b];
        const Scalar v = m(a, b);
        c_[index(i, j, k, l)] = v;
        c_[index(j, i, k, l)] = -v;
        c_[index(i, j, l, k)] = -v;
        c_[index(j, i, l, k)] = v;
      }
  }

  /// Raw storage for tensors whose symmetries hold by construction
  /// (Kulkarni-Nomizu products and differences of valid tensors).
  static CurvatureTensor from_storage_unchecked(const Storage& s) {
    CurvatureTensor t;
    t.c_ = s;
    return t;
  }

  template <typename S>
  friend CurvatureTensor<S> kulkarni_nomizu(const Matrix4<S>& h, const Matrix4<S>& k);

 private:
  Storage c_;
};

using CurvatureTensord = CurvatureTensor<double>;

/// Full-component inner product sum_{ijkl} A_ijkl B_ijkl.
template <typename Scalar>
Scalar inner(const CurvatureTensor<Scalar>& a, const CurvatureTensor<Scalar>& b) {
  Scalar s(0);
  for (std::size_t n = 0; n < a.data().size(); ++n) s += a.data()[n] * b.data()[n];
  return s;
}

/// Full-sum Frobenius norm; each sectional slot is counted four times.
template <typename Scalar>
Scalar norm(const CurvatureTensor<Scalar>& a) {
  using std::sqrt;
  return sqrt(inner(a, a));
}

/// (h /\ k)_ijkl = h_ik k_jl + h_jl k_ik - h_il k_jk - h_jk k_il for symmetric h, k.
template <typename Scalar>
CurvatureTensor<Scalar> kulkarni_nomizu(const Matrix4<Scalar>& h, const Matrix4<Scalar>& k) {
  typename CurvatureTensor<Scalar>::Storage s;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          s[CurvatureTensor<Scalar>::index(i, j, a, b)] =
              h(i, a) * k(j, b) + h(j, b) * k(i, a) - h(i, b) * k(j, a) - h(j, a) * k(i, b);
  return CurvatureTensor<Scalar>::from_storage_unchecked(s);
}

/// Weyl part of a curvature tensor. Same index symmetries, totally trace-free.
template <typename Scalar>
class WeylTensor : public CurvatureTensor<Scalar> {
 public:
  WeylTensor() = default;
  explicit WeylTensor(const CurvatureTensor<Scalar>& t) : CurvatureTensor<Scalar>(t) {}
  const CurvatureTensor<Scalar>& tensor() const { return *this; }
};

template <typename Scalar>
struct Decomposition {
  WeylTensor<Scalar> weyl;
  Matrix4<Scalar> traceless_ricci = Matrix4<Scalar>::Zero();
  Scalar scalar = Scalar(0);

  /// (1/2) Ric0 /\ g re-embedded as a curvature tensor.
  CurvatureTensor<Scalar> traceless_part() const {
    return Scalar(0.5) * kulkarni_nomizu<Scalar>(traceless_ricci, Matrix4<Scalar>::Identity());
  }
  /// (R/24) g /\ g, i.e. constant sectional curvature R/12.
  CurvatureTensor<Scalar> scalar_part() const {
    const Matrix4<Scalar> g = Matrix4<Scalar>::Identity();
    return (scalar / Scalar(24)) * kulkarni_nomizu<Scalar>(g, g);
  }
};

template <typename Scalar>
Decomposition<Scalar> decompose(const CurvatureTensor<Scalar>& rm) {
  const Matrix4<Scalar> g = Matrix4<Scalar>::Identity();
  const Matrix4<Scalar> ric = rm.ricci();
  const Scalar r = ric.trace();
  Decomposition<Scalar> d;
  d.scalar = r;
  d.traceless_ricci = ric - (r / Scalar(4)) * g;
  // W = Rm - (1/2) Ric /\ g + (R/6) (g_ik g_jl - g_il g_jk), with g /\ g twice the bracket.
  CurvatureTensor<Scalar> w = rm - Scalar(0.5) * kulkarni_nomizu<Scalar>(ric, g);
  w += (r / Scalar(12)) * kulkarni_nomizu<Scalar>(g, g);
  d.weyl = WeylTensor<Scalar>(w);
  return d;
}

template <typename Scalar>
CurvatureTensor<Scalar> recompose(const Decomposition<Scalar>& d) {
  return d.weyl.tensor() + d.traceless_part() + d.scalar_part();
}

/// Ricci eigenvalues, ascending.
template <typename Scalar>
struct RicciSpectrum {
  std::array<Scalar, 4> lambda{};
  Scalar trace() const { return lambda[0] + lambda[1] + lambda[2] + lambda[3]; }
};

/// Ricci eigenvalues with the orthonormal eigenvectors as columns.
template <typename Scalar>
struct RicciFrame {
  RicciSpectrum<Scalar> spectrum;
  Matrix4<Scalar> vectors;
};

template <typename Scalar>
RicciFrame<Scalar> ricci_frame(const CurvatureTensor<Scalar>& rm) {
  Eigen::SelfAdjointEigenSolver<Matrix4<Scalar>> solver(rm.ricci());
  RicciFrame<Scalar> f;
  for (int i = 0; i < 4; ++i) f.spectrum.lambda[i] = solver.eigenvalues()(i);
  f.vectors = solver.eigenvectors();
  return f;
}

template <typename Scalar>
RicciSpectrum<Scalar> ricci_spectrum(const CurvatureTensor<Scalar>& rm) {
  return ricci_frame(rm).spectrum;
}

/// Pinching coordinates of a spectrum:
/// b = (l3 + l4) - (l1 + l2), eta = b / R, x = (l2 - l1) / 2, y = (l4 - l3) / 2.
template <typename Scalar>
struct SpectrumParams {
  Scalar R;
  Scalar b;
  Scalar eta;
  Scalar x;
  Scalar y;
};

template <typename Scalar>
SpectrumParams<Scalar> spectrum_params(const RicciSpectrum<Scalar>& s) {
  using std::abs;
  const auto& l = s.lambda;
  const Scalar r = s.trace();
  Scalar mag(0);
  for (const Scalar& v : l) mag += abs(v);
  if (r == Scalar(0) || abs(r) <= Scalar(1e-14) * mag) {
    throw ZeroScalar("scalar curvature vanishes; eta is undefined");
  }
  SpectrumParams<Scalar> p;
  p.R = r;
  p.b = (l[2] + l[3]) - (l[0] + l[1]);
  p.eta = p.b / r;
  p.x = (l[1] - l[0]) / Scalar(2);
  p.y = (l[3] - l[2]) / Scalar(2);
  return p;
}

template <typename Scalar>
struct InvariantNorms {
  Scalar weyl;
  Scalar traceless_ricci;
};

template <typename Scalar>
InvariantNorms<Scalar> invariant_norms(const Decomposition<Scalar>& d) {
  return {norm(d.weyl.tensor()), d.traceless_ricci.norm()};
}

enum class PinchMode { Star, StarStar };

/// Pinching |W| <= gamma | |Ric0| - R / (2 sqrt 3) |. Range limits on gamma
/// are deliberately not enforced so out-of-range values can be probed.
struct PinchProfile {
  double gamma = 1.0;
  PinchMode mode = PinchMode::Star;
};

/// gamma | |Ric0| - R/(2 sqrt 3) | - |W|; nonnegative iff the pinching holds.
template <typename Scalar>
Scalar pinch_residual(const CurvatureTensor<Scalar>& rm, const PinchProfile& p) {
  using std::abs;
  using std::sqrt;
  const Decomposition<Scalar> d = decompose(rm);
  const InvariantNorms<Scalar> n = invariant_norms(d);
  const Scalar threshold = d.scalar / (Scalar(2) * sqrt(Scalar(3)));
  return Scalar(p.gamma) * abs(n.traceless_ricci - threshold) - n.weyl;
}

template <typename Scalar>
struct PairDerivatives {
  Scalar d12;  ///< d(l1 + l2)/dt
  Scalar d34;  ///< d(l3 + l4)/dt
  Scalar db;   ///< d34 - d12
};

enum class DerivativeFrame {
  /// Rotate into a Ricci eigenframe; eigenvalues must be pairwise distinct.
  Ricci,
  /// Use the given frame, which must already diagonalize Ricci. Repeated
  /// eigenvalues are accepted; the result then refers to that frame.
  Given,
};

/// Eigenvalue rates under dR_ij/dt = 2 sum R_ikjl R_kl, evaluated in a Ricci
/// eigenframe where d(l_i)/dt = 2 sum_k R_ikik l_k.
template <typename Scalar>
PairDerivatives<Scalar> pair_derivatives(const CurvatureTensor<Scalar>& rm,
                                         DerivativeFrame frame = DerivativeFrame::Ricci) {
  using std::abs;
  std::array<Scalar, 4> lambda;
  CurvatureTensor<Scalar> e;
  std::array<int, 4> order{0, 1, 2, 3};
  if (frame == DerivativeFrame::Ricci) {
    const RicciFrame<Scalar> f = ricci_frame(rm);
    lambda = f.spectrum.lambda;
    Scalar scale(0);
    for (const Scalar& v : lambda) scale = std::max(scale, abs(v));
    if (scale == Scalar(0)) return {Scalar(0), Scalar(0), Scalar(0)};
    for (int i = 0; i < 3; ++i) {
      if (lambda[i + 1] - lambda[i] <= Scalar(1e-8) * scale) {
        throw DegenerateSpectrum("Ricci eigenvalues are not pairwise distinct");
      }
    }
    e = rm.rotated(f.vectors);
  } else {
    const Matrix4<Scalar> ric = rm.ricci();
    const Scalar scale = std::max(Scalar(1), ric.cwiseAbs().maxCoeff());
    Matrix4<Scalar> off = ric;
    off.diagonal().setZero();
    if (off.cwiseAbs().maxCoeff() > Scalar(1e-12) * scale) {
      throw DegenerateSpectrum("given frame does not diagonalize Ricci");
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return ric(a, a) < ric(b, b); });
    for (int i = 0; i < 4; ++i) lambda[i] = ric(order[i], order[i]);
    e = rm;
  }
  std::array<Scalar, 4> rate{};
  for (int i = 0; i < 4; ++i) {
    Scalar acc(0);
    for (int k = 0; k < 4; ++k) {
      acc += e(order[i], order[k], order[i], order[k]) * lambda[k];
    }
    rate[i] = Scalar(2) * acc;
  }
  const Scalar d12 = rate[0] + rate[1];
  const Scalar d34 = rate[2] + rate[3];
  return {d12, d34, d34 - d12};
}

}  // namespace pinchlab
