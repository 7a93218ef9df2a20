#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace cipherorder {

using Point = std::uint32_t;

/// A bijection on {0, ..., degree-1}, stored as its image sequence.
///
/// Composition convention: compose(a, b) applies b first, then a. A product
/// cipher written E = XY therefore encrypts with Y first, matching the
/// right-to-left reading of product ciphers.
class Permutation {
public:
  /// Throws std::invalid_argument unless images is a bijection of {0..n-1}, n >= 1.
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree);

  /// Builds from disjoint cycles, e.g. from_cycles(3, {{0, 1}}) is the transposition (0 1).
  static Permutation from_cycles(std::size_t degree, std::initializer_list<std::initializer_list<Point>> cycles);

  /// Parses the image-array form "[1,0,2]".
  static Permutation parse(const std::string& text);

  std::size_t degree() const noexcept { return images_.size(); }
  std::span<const Point> images() const noexcept { return images_; }
  Point operator[](std::size_t i) const { return images_[i]; }

  bool is_identity() const noexcept;

  /// "[1,0,2]"
  std::string str() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

private:
  struct Trusted {};
  Permutation(std::vector<Point> images, Trusted) : images_(std::move(images)) {}

  friend Permutation compose(const Permutation&, const Permutation&);
  friend Permutation inverse(const Permutation&);

  std::vector<Point> images_;
};

/// a∘b: the result maps i to a(b(i)). Throws std::invalid_argument on degree mismatch.
Permutation compose(const Permutation& a, const Permutation& b);

Permutation inverse(const Permutation& a);

/// Image of a point. Throws std::out_of_range when p >= degree.
Point apply(const Permutation& a, Point p);

/// Componentwise image of a tuple of points.
std::vector<Point> apply(const Permutation& a, std::span<const Point> points);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace cipherorder
