#include "cipherorder/permutation.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>

namespace cipherorder {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  if (images_.empty()) throw std::invalid_argument("permutation must have degree >= 1");
  std::vector<bool> seen(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p]) {
      throw std::invalid_argument("not a bijection: " + str());
    }
    seen[p] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  if (degree == 0) throw std::invalid_argument("permutation must have degree >= 1");
  std::vector<Point> images(degree);
  for (std::size_t i = 0; i < degree; ++i) images[i] = static_cast<Point>(i);
  return Permutation(std::move(images), Trusted{});
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     std::initializer_list<std::initializer_list<Point>> cycles) {
  std::vector<Point> images = identity(degree).images_;
  std::vector<bool> used(degree, false);
  for (const auto& cycle : cycles) {
    std::vector<Point> c(cycle);
    for (Point p : c) {
      if (p >= degree || used[p]) throw std::invalid_argument("cycles must be disjoint and in range");
      used[p] = true;
    }
    for (std::size_t i = 0; i < c.size(); ++i) images[c[i]] = c[(i + 1) % c.size()];
  }
  return Permutation(std::move(images), Trusted{});
}

Permutation Permutation::parse(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    throw std::invalid_argument("malformed permutation '" + text + "'");
  }
  if (!j.is_array()) throw std::invalid_argument("permutation must be an image array: '" + text + "'");
  std::vector<Point> images;
  for (const auto& v : j) {
    if (!v.is_number_unsigned()) throw std::invalid_argument("permutation entries must be point indices: '" + text + "'");
    images.push_back(v.get<Point>());
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::string Permutation::str() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out << ',';
    out << images_[i];
  }
  out << ']';
  return out.str();
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) {
    throw std::invalid_argument("degree mismatch: " + std::to_string(a.degree()) + " vs " +
                                std::to_string(b.degree()));
  }
  std::vector<Point> images(a.degree());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = a.images_[b.images_[i]];
  return Permutation(std::move(images), Permutation::Trusted{});
}

Permutation inverse(const Permutation& a) {
  std::vector<Point> images(a.degree());
  for (std::size_t i = 0; i < images.size(); ++i) images[a.images_[i]] = static_cast<Point>(i);
  return Permutation(std::move(images), Permutation::Trusted{});
}

Point apply(const Permutation& a, Point p) {
  if (p >= a.degree()) {
    throw std::out_of_range("point " + std::to_string(p) + " outside degree " + std::to_string(a.degree()));
  }
  return a[p];
}

std::vector<Point> apply(const Permutation& a, std::span<const Point> points) {
  std::vector<Point> out;
  out.reserve(points.size());
  for (Point p : points) out.push_back(apply(a, p));
  return out;
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Point v : p.images()) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace cipherorder
