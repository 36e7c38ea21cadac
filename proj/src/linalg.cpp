#include "mpfock/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#ifdef MPFOCK_HAVE_LAPACKE
#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#endif

namespace mpfock {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[a] = b;
  }
};

// eigenvalues of [[a, b], [conj(b), d]] with a, d real
std::pair<double, double> eig2(double a, Complex b, double d) {
  double mid = 0.5 * (a + d);
  double h = std::hypot(0.5 * (a - d), std::abs(b));
  return {mid - h, mid + h};
}

}  // namespace

namespace detail {

RealVector dense_hermitian_eigenvalues(const Matrix& h) {
  const int n = static_cast<int>(h.rows());
  if (n == 0) return RealVector(0);
#ifdef MPFOCK_HAVE_LAPACKE
  Matrix work = h;  // zheev clobbers its input
  RealVector w(n);
  int info = LAPACKE_zheev(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n,
                           w.data());
  if (info != 0)
    throw Error("hermitian eigenvalue solve failed (zheev info=" +
                std::to_string(info) + ")");
  return w;
#else
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw Error("hermitian eigenvalue solve failed");
  return es.eigenvalues();
#endif
}

}  // namespace detail

RealVector hermitian_eigenvalues(const Matrix& h) {
  const int n = static_cast<int>(h.rows());
  if (h.cols() != n) throw Error("hermitian_eigenvalues: matrix must be square");
  if (n == 0) return RealVector(0);

  UnionFind uf(n);
  std::vector<char> occupied(n, 0);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (h(i, j) != Complex(0.0, 0.0)) {
        occupied[i] = occupied[j] = 1;
        uf.unite(i, j);
      }
    }
  }

  std::vector<std::vector<int>> groups(n);
  for (int i = 0; i < n; ++i)
    if (occupied[i]) groups[uf.find(i)].push_back(i);

  RealVector out(n);
  int pos = 0;
  for (int i = 0; i < n; ++i)
    if (!occupied[i]) out(pos++) = 0.0;

  for (const auto& g : groups) {
    if (g.empty()) continue;
    if (g.size() == 1) {
      out(pos++) = h(g[0], g[0]).real();
    } else if (g.size() == 2) {
      auto [lo, hi] = eig2(h(g[0], g[0]).real(), h(g[0], g[1]),
                           h(g[1], g[1]).real());
      out(pos++) = lo;
      out(pos++) = hi;
    } else {
      Matrix sub(g.size(), g.size());
      for (size_t a = 0; a < g.size(); ++a)
        for (size_t b = 0; b < g.size(); ++b) sub(a, b) = h(g[a], g[b]);
      RealVector ev = detail::dense_hermitian_eigenvalues(sub);
      for (Eigen::Index a = 0; a < ev.size(); ++a) out(pos++) = ev(a);
    }
  }

  std::sort(out.data(), out.data() + n);
  return out;
}

double min_hermitian_eigenvalue(const Matrix& h) {
  RealVector ev = hermitian_eigenvalues(h);
  return ev.size() ? ev(0) : 0.0;
}

}  // namespace mpfock
