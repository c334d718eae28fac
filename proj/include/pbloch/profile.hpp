// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <string>

namespace pbloch {

/// A scalar function of x1 together with its derivative.
///
/// Built-in profiles carry closed-form derivatives. Profiles parsed from
/// `expr:<formula>` are differentiated by central differences.
class Profile {
public:
  using Fn = std::function<double(double)>;

  Profile() = default;
  Profile(std::string id, Fn value, Fn derivative)
      : id_(std::move(id)), value_(std::move(value)), derivative_(std::move(derivative)) {}

  /// Resolve a profile id:
  ///   "zero", "flat:<c>" (or "flat-<c>"), "example2-zeta", "example2-p",
  ///   "example3-p", "expr:<formula in t>".
  /// Throws ConfigError for unknown ids or malformed expressions.
  static Profile from_id(const std::string& id);

  static Profile constant(double c);

  double operator()(double x1) const { return value_(x1); }
  double derivative(double x1) const { return derivative_(x1); }
  const std::string& id() const { return id_; }

  /// True when the profile is identically zero (only known for "zero" and "flat:0").
  bool is_zero() const { return is_zero_; }

private:
  std::string id_;
  Fn value_;
  Fn derivative_;
  bool is_zero_ = false;
};

/// Evaluate a built-in or expression profile at one point.
double surface_height(const std::string& profile_id, double x1);

namespace detail {

/// Compiled arithmetic expression in the single variable `t` (alias `x`).
/// Grammar: + - * / ^, unary minus, parentheses, numbers, `pi`, `e`, and the
/// functions sin cos tan exp log sqrt abs sinh cosh tanh asin acos atan.
class Expression {
public:
  explicit Expression(const std::string& text);
  double operator()(double t) const;

  struct Node;

private:
  std::shared_ptr<const Node> root_;
};

}  // namespace detail
}  // namespace pbloch
