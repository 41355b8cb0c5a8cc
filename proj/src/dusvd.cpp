#include "lqss/dusvd.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <sstream>

#include "lqss/detail/linalg.hpp"
#include "lqss/errors.hpp"

namespace lqss {

namespace {

const cd I(0.0, 1.0);

CMatrix jordan_block_full(double lambda) {
  CMatrix nb(4, 4);
  if (lambda >= 0.0) {
    const double c = std::sqrt(lambda + 0.5);
    const double x = 0.5 * std::asinh(1.0 / (2.0 * c * c));
    const double ch = std::cosh(x), sh = std::sinh(x);
    nb << c * ch, sh, 0, -c * sh,
          0, c * ch, c * sh, ch,
          0, -c * sh, c * ch, sh,
          c * sh, ch, 0, c * ch;
  } else {
    const double c = std::sqrt(std::abs(lambda - 0.5));
    const double x = 0.5 * std::asinh(1.0 / (2.0 * c * c));
    const double ch = std::cosh(x), sh = std::sinh(x);
    nb << ch, c * sh, c * ch, 0,
          -c * sh, 0, sh, c * ch,
          c * ch, 0, ch, c * sh,
          sh, c * ch, -c * sh, 0;
  }
  return nb;
}

Index v_width(const EigenClass& c) {
  switch (c.kind) {
    case EigenClassKind::real_positive:
    case EigenClassKind::real_negative:
    case EigenClassKind::zero_degenerate:
      return 1;
    case EigenClassKind::complex_pair:
      return 2;
    case EigenClassKind::jordan2:
      return c.eigenvector_in_kernel ? 1 : 2;
    case EigenClassKind::zero_kernel:
      return 0;
  }
  return 0;
}

CMatrix with_conjugate(const CMatrix& z) {
  CMatrix out(z.rows(), 2 * z.cols());
  out << z, krein_conjugate(z);
  return out;
}

// Rotates the degenerate zero columns so that P = N [Z, CZ] has
// P1 = P2 = U H, and returns U (m x k) and H.
void rotate_degenerate(const DoubledUpMatrix& n, KreinSpectrum& spectrum, CMatrix* u, RVector* h) {
  std::vector<Index> idx;
  for (Index i = 0; i < static_cast<Index>(spectrum.classes.size()); ++i)
    if (spectrum.classes[i].kind == EigenClassKind::zero_degenerate) idx.push_back(i);
  const Index k = static_cast<Index>(idx.size());
  const Index dim = 2 * n.half_cols();
  CMatrix z(dim, k);
  for (Index i = 0; i < k; ++i) z.col(i) = spectrum.classes[idx[i]].columns;
  const CMatrix p = n.full() * with_conjugate(z);
  const Index m = n.half_rows();
  const CMatrix p1 = p.topLeftCorner(m, k);
  const CMatrix p2 = p.topRightCorner(m, k);
  Eigen::JacobiSVD<CMatrix> svd(p1, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& s = svd.singularValues();
  if (s.size() < k || s(k - 1) < 1e-9 * std::max(1.0, s(0))) {
    std::ostringstream os;
    os << "degenerate zero block has a vanishing singular value ("
       << (s.size() < k ? 0.0 : s(k - 1)) << "); no canonical coupling exists";
    throw Error(ErrorKind::degeneracy, os.str());
  }
  const CMatrix uu = svd.matrixU().leftCols(k);
  const CMatrix yy = svd.matrixV();
  // Q = U† P2 conj(Y) is complex symmetric with singular values H; its
  // Takagi vectors absorb the residual phases so that P1 and P2 agree.
  const CMatrix q = uu.adjoint() * p2 * yy.conjugate();
  const detail::Takagi tk = detail::takagi(q);
  *u = uu * tk.u;
  *h = tk.s;
  const CMatrix zr = z * yy * tk.u;
  for (Index i = 0; i < k; ++i) spectrum.classes[idx[i]].columns = zr.col(i);
}

BogoliubovSvd assemble(const DoubledUpMatrix& n, KreinSpectrum spectrum, const DuSvdOptions& opts) {
  const Index m = n.half_rows(), nn = n.half_cols();
  const CMatrix nf = n.full();

  CMatrix deg_u;
  RVector deg_h;
  const bool has_degenerate = spectrum.count(EigenClassKind::zero_degenerate) > 0;
  if (has_degenerate) rotate_degenerate(n, spectrum, &deg_u, &deg_h);

  BogoliubovSvd out;
  CMatrix n1 = CMatrix::Zero(m, nn), n2 = CMatrix::Zero(m, nn);
  CMatrix v_first(2 * m, 0);
  Index w_at = 0, v_at = 0, deg_at = 0;
  std::vector<CMatrix> deg_vectors;
  Index deg_v_begin = -1;

  for (const auto& cls : spectrum.classes) {
    ClassPlacement pl;
    pl.w_begin = w_at;
    pl.w_count = cls.columns.cols();
    pl.v_begin = v_at;
    pl.v_count = v_width(cls);
    if (v_at + pl.v_count > m) throw Error(ErrorKind::numerical, "canonical form needs more output modes than available");
    w_at += pl.w_count;
    v_at += pl.v_count;
    out.placement.push_back(pl);

    if (cls.kind == EigenClassKind::zero_kernel) continue;
    if (cls.kind == EigenClassKind::zero_degenerate) {
      const double h = deg_h(deg_at);
      n1(pl.v_begin, pl.w_begin) = h;
      n2(pl.v_begin, pl.w_begin) = h;
      CVector nk(2 * m);
      nk << deg_u.col(deg_at), deg_u.col(deg_at).conjugate();
      deg_vectors.push_back(nk);
      if (deg_v_begin < 0) deg_v_begin = v_first.cols();
      v_first.conservativeResize(Eigen::NoChange, v_first.cols() + 1);
      v_first.rightCols(1).setZero();  // filled below
      ++deg_at;
      continue;
    }
    const DoubledUpMatrix blk = canonical_block(cls);
    n1.block(pl.v_begin, pl.w_begin, pl.v_count, pl.w_count) = blk.x1();
    n2.block(pl.v_begin, pl.w_begin, pl.v_count, pl.w_count) = blk.x2();
    const CMatrix bf = blk.full();
    Eigen::JacobiSVD<CMatrix> bsvd(bf);
    const RVector& bs = bsvd.singularValues();
    const double cond = bs(0) / bs(bs.size() - 1);
    if (!(cond <= opts.max_condition)) {
      std::ostringstream os;
      os << "canonical block for eigenvalue " << cls.value << " has condition number " << cond;
      throw Error(ErrorKind::numerical, os.str());
    }
    // N [Z, CZ] = [V_c, C V_c] N̄  =>  [V_c, C V_c] = N [Z, CZ] N̄⁺
    const CMatrix vb = detail::pinv_solve(bf.adjoint(), (nf * with_conjugate(cls.columns)).adjoint(), 0.0)
                           .adjoint();
    v_first.conservativeResize(Eigen::NoChange, v_first.cols() + pl.v_count);
    v_first.rightCols(pl.v_count) = vb.leftCols(pl.v_count);
  }

  if (has_degenerate) {
    const Index k = static_cast<Index>(deg_vectors.size());
    CMatrix nv(2 * m, k);
    for (Index i = 0; i < k; ++i) nv.col(i) = deg_vectors[i];
    // nondegenerate V columns found so far, with their conjugates
    CMatrix others(2 * m, 0);
    for (Index c = 0; c < v_first.cols(); ++c) {
      if (c >= deg_v_begin && c < deg_v_begin + k) continue;
      others.conservativeResize(Eigen::NoChange, others.cols() + 2);
      others.col(others.cols() - 2) = v_first.col(c);
      others.col(others.cols() - 1) = krein_conjugate(CVector(v_first.col(c)));
    }
    const CMatrix jm = j_matrix(m);
    CMatrix q = jm * nv;  // C-antisymmetric seed with <n_j, q_k> = n_j† n_k
    for (Index c = 0; c < q.cols(); ++c) {
      CVector x = q.col(c);
      for (Index o = 0; o < others.cols(); o += 2) {
        const CVector a = others.col(o), b = others.col(o + 1);
        x = x - a * j_inner(a, x) + b * j_inner(b, x);
      }
      q.col(c) = x;
    }
    const RMatrix g = (nv.adjoint() * jm * q).real();
    q = q * g.inverse().cast<cd>();
    const CMatrix bq = q.adjoint() * jm * q;
    q -= 0.5 * nv * bq;
    const CMatrix p = 0.5 * nv + q;
    v_first.middleCols(deg_v_begin, k) = p;
  }

  const CMatrix v_half = detail::complete_paired_basis(v_first, m, 1e-10);
  const CMatrix w_half = spectrum.first_half();
  out.v = BogoliubovMatrix::from_full(with_conjugate(v_half), opts.structure_tol);
  out.w = BogoliubovMatrix::from_full(with_conjugate(w_half), opts.structure_tol);
  out.n_hat = DoubledUpMatrix(n1, n2);
  const CMatrix rec = out.v.full() * out.n_hat.full() * flat_adjoint(out.w.full());
  out.residual = (nf - rec).norm() / std::max(nf.norm(), 1e-300);
  if (nf.norm() == 0.0) out.residual = rec.norm();
  out.spectrum = std::move(spectrum);
  return out;
}

}  // namespace

DoubledUpMatrix canonical_block(const EigenClass& cls) {
  const double lam = cls.value.real();
  switch (cls.kind) {
    case EigenClassKind::real_positive:
      return DoubledUpMatrix(CMatrix::Constant(1, 1, std::sqrt(lam)), CMatrix::Zero(1, 1));
    case EigenClassKind::real_negative:
      return DoubledUpMatrix(CMatrix::Zero(1, 1), CMatrix::Constant(1, 1, std::sqrt(-lam)));
    case EigenClassKind::complex_pair: {
      const double mod = std::abs(cls.value);
      const double alpha = std::sqrt(0.5 * (mod + lam));
      const double beta = cls.value.imag() / std::sqrt(2.0 * (mod + lam));
      CMatrix x2(2, 2);
      x2 << 0.0, I * beta, -I * beta, 0.0;  // -β σ_y
      return DoubledUpMatrix(alpha * CMatrix::Identity(2, 2), x2);
    }
    case EigenClassKind::jordan2: {
      if (cls.eigenvector_in_kernel) {
        const double r = 1.0 / std::sqrt(2.0);
        CMatrix x1(1, 2), x2(1, 2);
        x1 << r, 0.0;
        x2 << 0.0, -r;
        return DoubledUpMatrix(x1, x2);
      }
      return DoubledUpMatrix::from_full(jordan_block_full(lam), 1e-12);
    }
    case EigenClassKind::zero_kernel:
      return DoubledUpMatrix::zero(0, 1);
    case EigenClassKind::zero_degenerate:
      break;
  }
  throw Error(ErrorKind::validation, "degenerate zero classes have no standalone canonical block");
}

DoubledUpMatrix active_port_damped_form(double lambda, double x) {
  if (!(lambda < 0.0)) throw Error(ErrorKind::validation, "active damped form needs a negative eigenvalue");
  const double s = std::sqrt(-lambda);
  return DoubledUpMatrix(CMatrix::Constant(1, 1, s * std::sinh(x)),
                         CMatrix::Constant(1, 1, s * std::cosh(x)));
}

BogoliubovSvd jordan2_factor(const DoubledUpMatrix& n, const KreinSpectrum& spectrum,
                             const DuSvdOptions& opts) {
  if (spectrum.count(EigenClassKind::jordan2) == 0)
    throw Error(ErrorKind::validation, "jordan2_factor: spectrum has no Jordan block");
  if (spectrum.count(EigenClassKind::zero_degenerate) > 0) return degenerate_factor(n, spectrum, opts);
  return assemble(n, spectrum, opts);
}

BogoliubovSvd degenerate_factor(const DoubledUpMatrix& n, const KreinSpectrum& spectrum,
                                const DuSvdOptions& opts) {
  if (spectrum.count(EigenClassKind::zero_degenerate) == 0)
    throw Error(ErrorKind::validation, "degenerate_factor: spectrum has no degenerate zero class");
  const CMatrix p = degenerate_block(n, spectrum);
  const double res = (p * flat_adjoint(p)).norm();
  if (res > 1e-9 * std::max(1.0, p.squaredNorm())) {
    std::ostringstream os;
    os << "N is J-degenerate with P P♭ != 0 (‖P P♭‖ = " << res
       << "); no canonical decomposition is available for this structure";
    throw Error(ErrorKind::unsupported, os.str());
  }
  return assemble(n, spectrum, opts);
}

BogoliubovSvd bogoliubov_svd(const DoubledUpMatrix& n, const DuSvdOptions& opts) {
  KreinSpectrum spectrum = krein_spectral_decomposition(n, opts.spectral);
  if (spectrum.count(EigenClassKind::zero_degenerate) > 0) return degenerate_factor(n, spectrum, opts);
  if (spectrum.count(EigenClassKind::jordan2) > 0) return jordan2_factor(n, spectrum, opts);
  return assemble(n, std::move(spectrum), opts);
}

SymplecticSvd symplectic_svd(const RMatrix& x, const DuSvdOptions& opts) {
  const DoubledUpMatrix n = phi_to_doubled(x);
  const BogoliubovSvd svd = bogoliubov_svd(n, opts);
  SymplecticSvd out;
  out.v = phi_to_real(svd.v.matrix());
  out.w = phi_to_real(svd.w.matrix());
  out.x_hat = phi_to_real(svd.n_hat);
  out.residual = (x - out.v * out.x_hat * sharp_adjoint(out.w)).norm() / std::max(x.norm(), 1e-300);
  return out;
}

}  // namespace lqss
