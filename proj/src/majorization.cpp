#include "cipherorder/majorization.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cipherorder {

std::string to_string(Relation r) {
  switch (r) {
    case Relation::EqualUpToPermutation: return "equal";
    case Relation::StrictlyBelow: return "strictly-below";
    case Relation::Below: return "below";
    case Relation::StrictlyAbove: return "strictly-above";
    case Relation::Above: return "above";
    case Relation::Incomparable: return "incomparable";
    case Relation::NormMismatch: return "norm-mismatch";
  }
  return "?";
}

Relation mirror(Relation r) {
  switch (r) {
    case Relation::StrictlyBelow: return Relation::StrictlyAbove;
    case Relation::Below: return Relation::Above;
    case Relation::StrictlyAbove: return Relation::StrictlyBelow;
    case Relation::Above: return Relation::Below;
    default: return r;
  }
}

bool is_below(Relation r) {
  return r == Relation::EqualUpToPermutation || r == Relation::StrictlyBelow || r == Relation::Below;
}

bool is_above(Relation r) { return is_below(mirror(r)); }

std::vector<Rational> decreasing(std::span<const Rational> x) {
  std::vector<Rational> out(x.begin(), x.end());
  std::sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) { return a > b; });
  return out;
}

namespace {

std::vector<Rational> padded(std::span<const Rational> v, std::size_t n) {
  std::vector<Rational> out(v.begin(), v.end());
  out.resize(n, Rational(0));
  return out;
}

void require_nonnegative(std::span<const Rational> v) {
  for (const auto& e : v)
    if (e < 0) throw std::invalid_argument("majorization needs nonnegative vectors, got " + to_string(e));
}

// Indices ordering v decreasingly; ties keep their original order.
std::vector<std::size_t> decreasing_order(const std::vector<Rational>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  return idx;
}

// Kuhn's augmenting paths; rows and columns tried in increasing index order.
bool try_row(std::size_t r, const std::vector<std::vector<bool>>& allowed, std::vector<bool>& visited,
             std::vector<std::size_t>& col_owner) {
  const std::size_t n = allowed.size();
  for (std::size_t c = 0; c < n; ++c) {
    if (!allowed[r][c] || visited[c]) continue;
    visited[c] = true;
    if (col_owner[c] == n || try_row(col_owner[c], allowed, visited, col_owner)) {
      col_owner[c] = r;
      return true;
    }
  }
  return false;
}

std::optional<std::vector<Point>> perfect_matching(const Matrix& D, const Rational& threshold) {
  const std::size_t n = D.size();
  std::vector<std::vector<bool>> allowed(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) allowed[i][j] = D[i][j] > 0 && D[i][j] >= threshold;
  std::vector<std::size_t> col_owner(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<bool> visited(n, false);
    if (!try_row(r, allowed, visited, col_owner)) return std::nullopt;
  }
  std::vector<Point> perm(n);
  for (std::size_t c = 0; c < n; ++c) perm[col_owner[c]] = static_cast<Point>(c);
  return perm;
}

}  // namespace

MajorizationVerdict compare(std::span<const Rational> x, std::span<const Rational> y) {
  require_nonnegative(x);
  require_nonnegative(y);
  const std::size_t n = std::max(x.size(), y.size());
  const auto xs = decreasing(padded(x, n));
  const auto ys = decreasing(padded(y, n));
  if (sum(xs) != sum(ys)) return {Relation::NormMismatch, std::nullopt};

  Rational px = 0, py = 0;
  std::optional<std::size_t> first_above, first_below;
  for (std::size_t k = 0; k < n; ++k) {
    px += xs[k];
    py += ys[k];
    if (px > py && !first_above) first_above = k + 1;
    if (px < py && !first_below) first_below = k + 1;
  }
  if (first_above && first_below) return {Relation::Incomparable, std::make_pair(*first_above, *first_below)};
  if (first_below) return {Relation::StrictlyBelow, std::nullopt};
  if (first_above) return {Relation::StrictlyAbove, std::nullopt};
  return {Relation::EqualUpToPermutation, std::nullopt};
}

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

std::vector<Rational> multiply(const Matrix& D, std::span<const Rational> y) {
  std::vector<Rational> out(D.size(), Rational(0));
  for (std::size_t i = 0; i < D.size(); ++i) {
    if (D[i].size() != y.size()) throw std::invalid_argument("multiply: dimension mismatch");
    for (std::size_t j = 0; j < y.size(); ++j) out[i] += D[i][j] * y[j];
  }
  return out;
}

Matrix reconstruct(const std::vector<BirkhoffTerm>& terms, std::size_t n) {
  Matrix m(n, std::vector<Rational>(n, Rational(0)));
  for (const auto& t : terms)
    for (std::size_t i = 0; i < n; ++i) m[i][t.perm[i]] += t.weight;
  return m;
}

bool is_doubly_stochastic(const Matrix& D) {
  const std::size_t n = D.size();
  std::vector<Rational> cols(n, Rational(0));
  for (const auto& row : D) {
    if (row.size() != n) return false;
    Rational r = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] < 0) return false;
      r += row[j];
      cols[j] += row[j];
    }
    if (r != 1) return false;
  }
  return std::all_of(cols.begin(), cols.end(), [](const Rational& c) { return c == 1; });
}

DoublyStochasticWitness hlp_witness(std::span<const Rational> x, std::span<const Rational> y) {
  if (!is_below(compare(x, y).relation)) throw std::invalid_argument("hlp_witness: x is not majorized by y");
  const std::size_t n = std::max(x.size(), y.size());
  if (n == 0) throw std::invalid_argument("hlp_witness: empty vectors");

  const auto xp = padded(x, n);
  const auto yp = padded(y, n);
  const auto ox = decreasing_order(xp);
  const auto oy = decreasing_order(yp);
  std::vector<Rational> target(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    target[i] = xp[ox[i]];
    v[i] = yp[oy[i]];
  }

  // Sorted-coordinate witness: repeatedly move mass from the last coordinate
  // where v exceeds the target to the next one where it falls short. Each step
  // fixes at least one coordinate and keeps v decreasing with target ⪯ v.
  Matrix sorted = identity_matrix(n);
  DoublyStochasticWitness out;
  while (v != target) {
    if (out.t_transforms >= n) throw std::logic_error("hlp_witness: T-transform construction did not terminate");
    std::size_t j = n;
    for (std::size_t i = n; i-- > 0;)
      if (v[i] > target[i]) {
        j = i;
        break;
      }
    std::size_t k = j + 1;
    while (k < n && !(v[k] < target[k])) ++k;
    if (j == n || k == n) throw std::logic_error("hlp_witness: no T-transform pivot");

    const Rational delta = std::min(Rational(v[j] - target[j]), Rational(target[k] - v[k]));
    const Rational t = delta / (v[j] - v[k]);
    // T = (1-t)I + t·swap(j,k); apply to v and left-multiply the accumulated matrix.
    const Rational vj = v[j], vk = v[k];
    v[j] = (1 - t) * vj + t * vk;
    v[k] = t * vj + (1 - t) * vk;
    for (std::size_t c = 0; c < n; ++c) {
      const Rational a = sorted[j][c], b = sorted[k][c];
      sorted[j][c] = (1 - t) * a + t * b;
      sorted[k][c] = t * a + (1 - t) * b;
    }
    ++out.t_transforms;
  }

  out.matrix.assign(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.matrix[ox[i]][oy[j]] = sorted[i][j];
  out.decomposition = birkhoff_decompose(out.matrix);
  return out;
}

std::vector<BirkhoffTerm> birkhoff_decompose(const Matrix& D) {
  if (D.empty()) throw std::invalid_argument("birkhoff_decompose: empty matrix");
  for (const auto& row : D)
    if (row.size() != D.size()) throw std::invalid_argument("birkhoff_decompose: matrix is not square");
  if (!is_doubly_stochastic(D)) throw std::invalid_argument("birkhoff_decompose: matrix is not doubly stochastic");

  const std::size_t n = D.size();
  Matrix rest = D;
  std::vector<BirkhoffTerm> terms;
  for (;;) {
    std::vector<Rational> levels;
    for (const auto& row : rest)
      for (const auto& e : row)
        if (e > 0) levels.push_back(e);
    if (levels.empty()) break;
    std::sort(levels.begin(), levels.end(), [](const Rational& a, const Rational& b) { return a > b; });
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    // Largest threshold admitting a perfect matching; feasibility is monotone.
    std::size_t lo = 0, hi = levels.size() - 1;
    auto best = perfect_matching(rest, levels[hi]);
    if (!best) throw std::logic_error("birkhoff_decompose: residual has no perfect matching");
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (auto m = perfect_matching(rest, levels[mid])) {
        best = std::move(m);
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }

    Rational w = rest[0][(*best)[0]];
    for (std::size_t i = 1; i < n; ++i) w = std::min(w, rest[i][(*best)[i]]);
    for (std::size_t i = 0; i < n; ++i) rest[i][(*best)[i]] -= w;
    terms.push_back({w, Permutation(std::move(*best))});
  }
  return terms;
}

}  // namespace cipherorder
