#include "grasslen/multivector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "grasslen/kernels.hpp"

namespace grasslen {

namespace {

std::size_t checked_size(int m, int n) {
  if (m < 0 || m > kMaxDim) throw std::invalid_argument("ambient dimension must lie in [0, 64]");
  if (n < 0 || n > m) throw std::invalid_argument("grade must lie in [0, m]");
  const Ordinal c = binomial(m, n);
  if (c > (Ordinal{1} << 40)) throw std::length_error("C(m,n) too large for dense storage");
  return static_cast<std::size_t>(c);
}

bool all_real(std::span<const Scalar> c) {
  return std::all_of(c.begin(), c.end(), [](Scalar z) { return z.imag() == 0.0; });
}

} // namespace

Multivector::Multivector(int m, int n, Field field)
    : m_(m), n_(n), field_(field), coeffs_(checked_size(m, n)) {}

Multivector::Multivector(int m, int n, std::vector<Scalar> coeffs, Field field)
    : m_(m), n_(n), field_(field), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != checked_size(m, n))
    throw std::invalid_argument("coefficient count must equal C(m,n)");
  if (field_ == Field::Real && !all_real(coeffs_))
    throw std::invalid_argument("real multivector has a nonzero imaginary part");
}

Multivector Multivector::basis(int m, std::initializer_list<int> indices) {
  return basis(SubsetIndex(m, std::vector<int>(indices)));
}

Multivector Multivector::basis(const SubsetIndex& s) {
  Multivector out(s.m(), s.n(), Field::Real);
  out.coeffs_[static_cast<std::size_t>(subset_rank(s))] = 1.0;
  return out;
}

Scalar Multivector::at(const SubsetIndex& s) const {
  if (s.m() != m_ || s.n() != n_) throw std::invalid_argument("subset shape mismatch");
  return coeffs_[static_cast<std::size_t>(subset_rank(s))];
}

double Multivector::squared_norm() const noexcept {
  double s = 0.0;
  for (Scalar z : coeffs_) s += std::norm(z);
  return s;
}

double Multivector::norm() const noexcept { return std::sqrt(squared_norm()); }

bool Multivector::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Scalar z) { return z == Scalar{}; });
}

Multivector Multivector::with_field(Field field) const {
  return Multivector(m_, n_, coeffs_, field);
}

void Multivector::check_compatible(const Multivector& o) const {
  if (m_ != o.m_ || n_ != o.n_) throw std::invalid_argument("multivector shape mismatch");
}

Multivector Multivector::operator+(const Multivector& o) const {
  check_compatible(o);
  std::vector<Scalar> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] + o.coeffs_[i];
  return Multivector(m_, n_, std::move(c), join(field_, o.field_));
}

Multivector Multivector::operator-(const Multivector& o) const {
  check_compatible(o);
  std::vector<Scalar> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] - o.coeffs_[i];
  return Multivector(m_, n_, std::move(c), join(field_, o.field_));
}

Multivector Multivector::operator-() const { return Scalar{-1.0} * *this; }

Multivector operator*(Scalar c, const Multivector& a) {
  std::vector<Scalar> out(a.coeffs_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * a.coeffs_[i];
  return Multivector(a.m_, a.n_, std::move(out), c.imag() == 0.0 ? a.field_ : Field::Complex);
}

Multivector wedge_vectors(const Eigen::MatrixXcd& factors) {
  const int m = static_cast<int>(factors.rows());
  const int k = static_cast<int>(factors.cols());
  if (k < 1) throw std::invalid_argument("wedge_vectors needs at least one vector");
  if (k > m) throw std::invalid_argument("more vectors than the ambient dimension");
  const bool real = (factors.imag().array() == 0.0).all();
  return Multivector(m, k, kernels::wedge_columns(factors, SubsetTableChain(m, k)),
                     real ? Field::Real : Field::Complex);
}

Multivector wedge_vectors(std::span<const VectorM> vs) {
  if (vs.empty()) throw std::invalid_argument("wedge_vectors needs at least one vector");
  const auto m = vs.front().size();
  Eigen::MatrixXcd f(m, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].size() != m) throw std::invalid_argument("vectors have mismatched dimensions");
    f.col(static_cast<Eigen::Index>(i)) = vs[i];
  }
  return wedge_vectors(f);
}

Multivector wedge(const Multivector& a, const Multivector& b) {
  if (a.m() != b.m()) throw std::invalid_argument("wedge operands live in different spaces");
  const int m = a.m();
  const int p = a.n(), q = b.n();
  if (p + q > m) throw std::invalid_argument("wedge grade overflow: p + q > m");
  std::vector<Scalar> out(static_cast<std::size_t>(binomial(m, p + q)));
  const SubsetTable ta(m, p), tb(m, q);
  for (std::size_t i = 0; i < ta.size(); ++i) {
    const Scalar x = a[i];
    if (x == Scalar{}) continue;
    const Mask ma = ta.mask(i);
    for (std::size_t j = 0; j < tb.size(); ++j) {
      const Mask mb = tb.mask(j);
      if ((ma & mb) != 0 || b[j] == Scalar{}) continue;
      const Scalar term = x * b[j];
      const Ordinal r = mask_rank(m, ma | mb);
      out[r] += shuffle_sign(ma, mb) > 0 ? term : -term;
    }
  }
  return Multivector(m, p + q, std::move(out), join(a.field(), b.field()));
}

Multivector contract(const Multivector& psi, int j) {
  const int m = psi.m(), n = psi.n();
  if (n == 0) throw std::invalid_argument("cannot contract a grade-0 multivector");
  if (j < 1 || j > m) throw std::invalid_argument("covector index out of range");
  const int bit = j - 1;
  const SubsetTable t(m, n - 1);
  std::vector<Scalar> out(t.size());
  for (std::size_t r = 0; r < t.size(); ++r) {
    const Mask mask = t.mask(r);
    if (mask & (Mask{1} << bit)) continue;
    const Scalar c = psi[mask_rank(m, mask | (Mask{1} << bit))];
    out[r] = (count_below(mask, bit) & 1) ? -c : c;
  }
  return Multivector(m, n - 1, std::move(out), psi.field());
}

Multivector hodge_dual(const Multivector& psi) {
  const int m = psi.m(), n = psi.n();
  const SubsetTable t(m, n);
  const Mask full = (m == 64) ? ~Mask{0} : ((Mask{1} << m) - 1);
  std::vector<Scalar> out(psi.size());
  for (std::size_t r = 0; r < t.size(); ++r) {
    const Mask mask = t.mask(r);
    // parity of the permutation (I, I^c) equals the number of inversions
    // sum_k (i_k - k) with 1-based i_k and k
    int inversions = 0;
    int k = 0;
    for (auto v : t.members(r)) inversions += static_cast<int>(v) - k++;
    const Scalar c = psi[r];
    out[mask_rank(m, full & ~mask)] = (inversions & 1) ? -c : c;
  }
  return Multivector(m, m - n, std::move(out), psi.field());
}

Multivector apply_linear(const Eigen::MatrixXcd& a, const Multivector& psi) {
  const int m = psi.m(), n = psi.n();
  if (a.rows() != m || a.cols() != m) throw std::invalid_argument("linear map must be m x m");
  if (n == 0) return psi;
  const SubsetTable t(m, n);
  const SubsetTableChain chain(m, n);
  Eigen::MatrixXcd cols(m, n);
  std::vector<Scalar> out(psi.size());
  for (std::size_t r = 0; r < t.size(); ++r) {
    if (psi[r] == Scalar{}) continue;
    int k = 0;
    for (auto v : t.members(r)) cols.col(k++) = a.col(v);
    const auto image = kernels::wedge_columns(cols, chain);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += psi[r] * image[i];
  }
  return Multivector(m, n, std::move(out));
}

double relative_distance(const Multivector& a, const Multivector& b) {
  const double scale = std::max({a.norm(), b.norm(), 1e-300});
  return (a - b).norm() / scale;
}

} // namespace grasslen
