#include "lqss/krein_spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lqss/detail/linalg.hpp"
#include "lqss/errors.hpp"

namespace lqss {

const char* to_string(EigenClassKind kind) {
  switch (kind) {
    case EigenClassKind::real_positive: return "real_positive";
    case EigenClassKind::real_negative: return "real_negative";
    case EigenClassKind::complex_pair: return "complex_pair";
    case EigenClassKind::jordan2: return "jordan2";
    case EigenClassKind::zero_degenerate: return "zero_degenerate";
    case EigenClassKind::zero_kernel: return "zero_kernel";
  }
  return "unknown";
}

Index KreinSpectrum::count(EigenClassKind kind) const {
  return std::count_if(classes.begin(), classes.end(),
                       [kind](const EigenClass& c) { return c.kind == kind; });
}

CMatrix KreinSpectrum::first_half() const {
  Index cols = 0;
  Index rows = 0;
  for (const auto& c : classes) {
    cols += c.columns.cols();
    rows = c.columns.rows();
  }
  CMatrix z(rows, cols);
  Index at = 0;
  for (const auto& c : classes) {
    z.middleCols(at, c.columns.cols()) = c.columns;
    at += c.columns.cols();
  }
  return z;
}

CMatrix KreinSpectrum::w() const {
  const CMatrix z = first_half();
  CMatrix w(z.rows(), 2 * z.cols());
  w << z, krein_conjugate(z);
  return w;
}

DoubledUpMatrix caln(const DoubledUpMatrix& n) { return n.flat() * n; }

namespace {

struct Cluster {
  cd value;
  Index size;
};

std::vector<Cluster> cluster_eigenvalues(const CVector& ev, double radius) {
  const Index k = ev.size();
  std::vector<Index> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Index i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (Index i = 0; i < k; ++i)
    for (Index j = i + 1; j < k; ++j)
      if (std::abs(ev(i) - ev(j)) < radius) parent[find(i)] = find(j);
  std::vector<Cluster> out;
  std::vector<Index> roots;
  for (Index i = 0; i < k; ++i) {
    const Index r = find(i);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      out.push_back({ev(i), 1});
    } else {
      auto& c = out[it - roots.begin()];
      c.value += ev(i);
      c.size += 1;
    }
  }
  for (auto& c : out) c.value /= static_cast<double>(c.size);
  return out;
}

std::string describe(cd v) {
  std::ostringstream os;
  os.precision(6);
  os << v.real();
  if (v.imag() != 0.0) os << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
  return os.str();
}

// Jordan chain z1 -> z2 for a real eigenvalue carrying one 2x2 Jordan block
// and its conjugate partner.  Returns the columns [z̄1, C z̄2] with
// z̄1 = (z1 + z2)/√2, z̄2 = (z1 - z2)/√2.
CMatrix jordan_columns(const CMatrix& shifted, const CMatrix& eigvecs, double tol,
                       CVector* chain_head) {
  const CMatrix f = detail::pinv_solve(shifted, eigvecs, tol);
  const Index k = shifted.rows() / 2;
  const CMatrix j = j_matrix(k);
  const CMatrix h = eigvecs.adjoint() * j * f;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (h + h.adjoint()));
  const double mu = es.eigenvalues()(1);
  if (mu <= 0.0) throw Error(ErrorKind::numerical, "Jordan chain has vanishing J-pairing");
  const CVector c = es.eigenvectors().col(1);
  CVector z1 = eigvecs * c / std::sqrt(mu);
  CVector z2 = f * c / std::sqrt(mu);
  // <z1, z2> = 1 now; make z2 J-neutral
  z2 -= 0.5 * j_inner(z2, z2).real() * z1;
  const double r = 1.0 / std::sqrt(2.0);
  CVector a = r * (z1 + z2);
  const cd phase = detail::normalize_phase(a);
  z1 *= phase;
  z2 *= phase;
  CMatrix cols(2 * k, 2);
  cols.col(0) = a;
  cols.col(1) = krein_conjugate(CVector(r * (z1 - z2)));
  *chain_head = z1;
  return cols;
}

// Splits the eigenspace of a non-real λ (with its conjugate) into blocks
// [z̃1, C z̃2] with z1 in E_λ, z2 in E_conj(λ), <z1, z2> = 1.
std::vector<CMatrix> complex_blocks(const CMatrix& e_lambda) {
  std::vector<CMatrix> out;
  CMatrix a = e_lambda;
  const Index dim = a.rows();
  const double r = 1.0 / std::sqrt(2.0);
  while (a.cols() > 0) {
    if (a.cols() % 2 != 0)
      throw Error(ErrorKind::numerical, "complex eigenspace has odd dimension");
    const CMatrix b = krein_conjugate(a);
    const CMatrix g = a.adjoint() * j_matrix(dim / 2) * b;
    Eigen::JacobiSVD<CMatrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double s = svd.singularValues()(0);
    if (s <= 1e-12) throw Error(ErrorKind::numerical, "complex eigenspace is J-degenerate");
    CVector z1 = a * svd.matrixU().col(0) / std::sqrt(s);
    CVector z2 = b * svd.matrixV().col(0) / std::sqrt(s);
    CVector t1 = r * (z1 + z2);
    const cd phase = detail::normalize_phase(t1);
    z1 *= phase;
    z2 *= phase;
    CMatrix cols(dim, 2);
    cols.col(0) = t1;
    cols.col(1) = krein_conjugate(CVector(r * (z1 - z2)));
    out.push_back(cols);
    if (a.cols() == 2) break;
    // keep the part of E_λ J-orthogonal to z2 and C z1
    CMatrix cons(2, dim);
    cons.row(0) = (j_matrix(dim / 2) * z2).adjoint();
    cons.row(1) = (j_matrix(dim / 2) * krein_conjugate(z1)).adjoint();
    const CMatrix coeff = detail::null_space(cons * a, 0.0);
    a = detail::leading_range(a * coeff.leftCols(a.cols() - 2), a.cols() - 2);
  }
  return out;
}

}  // namespace

KreinSpectrum krein_spectral_decomposition(const DoubledUpMatrix& n, const SpectralOptions& opts) {
  const DoubledUpMatrix cal = caln(n);
  const CMatrix c = cal.full();
  const Index dim = c.rows();
  const double scale = std::max(1.0, c.norm());
  const double nscale = std::max(1.0, n.full().norm());

  Eigen::ComplexEigenSolver<CMatrix> ces(c, false);
  if (ces.info() != Eigen::Success) throw Error(ErrorKind::numerical, "eigenvalue solver failed");
  const auto clusters = cluster_eigenvalues(ces.eigenvalues(), opts.cluster_tol * scale);

  std::vector<EigenClass> pos, neg, cplx, jordan, zero_deg, zero_ker;
  const CMatrix id = CMatrix::Identity(dim, dim);

  for (const auto& cl : clusters) {
    cd lambda = cl.value;
    if (std::abs(lambda.imag()) < opts.class_tol * (1.0 + std::abs(lambda)))
      lambda = cd(lambda.real(), 0.0);
    const bool is_real = lambda.imag() == 0.0;
    if (!is_real && lambda.imag() < 0.0) continue;  // handled with its conjugate
    const bool is_zero = std::abs(lambda) < opts.class_tol * scale;
    if (is_zero) lambda = 0.0;

    const CMatrix shifted = c - lambda * id;
    const double tol = opts.rank_tol * scale;
    CMatrix eig = detail::null_space(shifted, tol);
    const Index geo = eig.cols();

    if (geo != cl.size) {
      const Index sq = detail::null_space(shifted * shifted, tol * scale).cols();
      if (!is_real || cl.size != 4 || geo != 2 || sq != 4) {
        std::ostringstream os;
        os << "eigenvalue " << describe(lambda) << " of N♭N has algebraic multiplicity "
           << cl.size << " but geometric multiplicity " << geo;
        if (is_real && sq < cl.size) os << " (Jordan block larger than 2)";
        os << "; only semisimple eigenvalues and a single pair of 2x2 Jordan blocks are supported";
        throw Error(ErrorKind::unsupported, os.str());
      }
      CVector head;
      EigenClass jc{EigenClassKind::jordan2, lambda, jordan_columns(shifted, eig, tol, &head)};
      if (is_zero) {
        const double nz = (n.full() * head).norm();
        jc.eigenvector_in_kernel = nz < 1e-6 * nscale * head.norm();
      }
      jordan.push_back(std::move(jc));
      continue;
    }

    if (!is_real) {
      for (auto& cols : complex_blocks(eig))
        cplx.push_back({EigenClassKind::complex_pair, lambda, std::move(cols)});
      continue;
    }

    if (!is_zero) {
      const CMatrix z = detail::paired_positive_basis(eig, 1e-10);
      for (Index i = 0; i < z.cols(); ++i)
        (lambda.real() > 0 ? pos : neg)
            .push_back({lambda.real() > 0 ? EigenClassKind::real_positive
                                          : EigenClassKind::real_negative,
                        lambda, z.col(i)});
      continue;
    }

    // zero eigenvalue: separate Ker N from the rest of the eigenspace
    const CMatrix kernel = detail::null_space(n.full(), 1e-9 * nscale);
    if (kernel.cols() >= eig.cols()) {
      const CMatrix z = detail::paired_positive_basis(eig, 1e-10);
      for (Index i = 0; i < z.cols(); ++i)
        zero_ker.push_back({EigenClassKind::zero_kernel, 0.0, z.col(i)});
      continue;
    }
    const CMatrix jm = j_matrix(dim / 2);
    CMatrix k_nd(dim, 0);
    if (kernel.cols() > 0) {
      const CMatrix gk = kernel.adjoint() * jm * kernel;
      Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (gk + gk.adjoint()));
      std::vector<Index> keep;
      for (Index i = 0; i < gk.rows(); ++i)
        if (std::abs(es.eigenvalues()(i)) > 1e-8) keep.push_back(i);
      k_nd.resize(dim, static_cast<Index>(keep.size()));
      for (std::size_t i = 0; i < keep.size(); ++i)
        k_nd.col(static_cast<Index>(i)) = kernel * es.eigenvectors().col(keep[i]);
    }
    CMatrix rest = eig;
    if (k_nd.cols() > 0) {
      const CMatrix coeff = detail::null_space(k_nd.adjoint() * jm * eig, 1e-9);
      rest = detail::orthonormal_range(eig * coeff, 1e-9);
    }
    const CMatrix zd = detail::paired_positive_basis(rest, 1e-10);
    for (Index i = 0; i < zd.cols(); ++i)
      zero_deg.push_back({EigenClassKind::zero_degenerate, 0.0, zd.col(i)});
    if (k_nd.cols() > 0) {
      const CMatrix zk = detail::paired_positive_basis(k_nd, 1e-10);
      for (Index i = 0; i < zk.cols(); ++i)
        zero_ker.push_back({EigenClassKind::zero_kernel, 0.0, zk.col(i)});
    }
  }

  auto by_desc_abs = [](const EigenClass& a, const EigenClass& b) {
    return std::abs(a.value) > std::abs(b.value);
  };
  std::stable_sort(pos.begin(), pos.end(), by_desc_abs);
  std::stable_sort(neg.begin(), neg.end(), by_desc_abs);
  std::stable_sort(cplx.begin(), cplx.end(), by_desc_abs);
  std::stable_sort(jordan.begin(), jordan.end(), [](const EigenClass& a, const EigenClass& b) {
    return a.value.real() > b.value.real();
  });

  KreinSpectrum out;
  for (auto* group : {&pos, &neg, &cplx, &jordan, &zero_deg, &zero_ker})
    for (auto& cls : *group) out.classes.push_back(std::move(cls));
  return out;
}

CMatrix degenerate_block(const DoubledUpMatrix& n, const KreinSpectrum& spectrum) {
  CMatrix z(2 * n.half_cols(), 0);
  for (const auto& c : spectrum.classes) {
    if (c.kind != EigenClassKind::zero_degenerate) continue;
    z.conservativeResize(Eigen::NoChange, z.cols() + 1);
    z.rightCols(1) = c.columns;
  }
  CMatrix zz(z.rows(), 2 * z.cols());
  zz << z, krein_conjugate(z);
  return n.full() * zz;
}

NondegeneracyReport check_nondegenerate(const DoubledUpMatrix& n, const SpectralOptions& opts) {
  const KreinSpectrum spectrum = krein_spectral_decomposition(n, opts);
  NondegeneracyReport rep{Nondegeneracy::nondegenerate};
  rep.degenerate_dimension = spectrum.count(EigenClassKind::zero_degenerate);
  if (rep.degenerate_dimension == 0) return rep;
  const CMatrix p = degenerate_block(n, spectrum);
  rep.pp_flat_residual = (p * flat_adjoint(p)).norm();
  const double tol = 1e-9 * std::max(1.0, p.squaredNorm());
  rep.status = rep.pp_flat_residual < tol ? Nondegeneracy::degenerate_special
                                          : Nondegeneracy::degenerate_unsupported;
  return rep;
}

}  // namespace lqss
