#pragma once

// Named catalog spaces built from JSON specs, and the field families used by
// the test matrix.

#include <cmath>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "kslab/catalog.hpp"
#include "kslab/harness/config.hpp"
#include "kslab/sasaki.hpp"
#include "kslab/warped.hpp"

namespace kslab::harness {

struct Space {
  std::string id;
  std::string family;
  Json spec;
  std::variant<ChartBackend, HomogeneousBackend, WarpedProduct, SasakiBundle> impl;

  int dim() const {
    return std::visit([](const auto& s) { return s.dim(); }, impl);
  }

  template <class F>
  decltype(auto) with_backend(F&& f) const {
    return std::visit(
        [&f](const auto& s) -> decltype(auto) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, WarpedProduct> || std::is_same_v<T, SasakiBundle>)
            return f(s.backend);
          else
            return f(s);
        },
        impl);
  }

  template <class T>
  const T& as(const std::string& op) const {
    if (const T* p = std::get_if<T>(&impl)) return *p;
    throw PreconditionError(op + ": not supported on space family '" + family + "'");
  }
};

inline const std::vector<std::string>& space_families() {
  static const std::vector<std::string> families = {"flat", "round_sphere", "hyperbolic_ball", "warped_flat", "su2", "sasaki"};
  return families;
}

namespace detail {
inline double num(const Json& spec, const char* key, double fallback) {
  return spec.contains(key) ? spec.at(key).get<double>() : fallback;
}
inline int integer(const Json& spec, const char* key, int fallback) {
  return spec.contains(key) ? spec.at(key).get<int>() : fallback;
}
}  // namespace detail

inline Space build_space(const std::string& id, const Json& spec) {
  const std::string family = spec.at("family").get<std::string>();
  auto make = [&](auto impl) { return Space{id, family, spec, std::move(impl)}; };
  try {
    if (family == "flat") return make(ChartBackend(catalog::flat(detail::integer(spec, "dim", 3))));
    if (family == "round_sphere")
      return make(ChartBackend(catalog::round_sphere(detail::integer(spec, "dim", 3), detail::num(spec, "radius", 1.0))));
    if (family == "hyperbolic_ball")
      return make(ChartBackend(catalog::hyperbolic_ball(detail::integer(spec, "dim", 3), detail::num(spec, "radius", 1.0))));
    if (family == "warped_flat")
      return make(build_warped(detail::integer(spec, "fiber_dim", 2), detail::num(spec, "nu", 0.5)));
    if (family == "su2") return make(HomogeneousBackend(catalog::su2(detail::num(spec, "radius", 1.0))));
    if (family == "sasaki")
      return make(build_total(build_base(spec.value("base", std::string("S2")), detail::num(spec, "k", 4.0))));
  } catch (const Json::exception& e) {
    throw ConfigError("space '" + id + "': " + e.what());
  } catch (const PreconditionError& e) {
    throw ConfigError("space '" + id + "': " + e.what());
  }
  throw ConfigError("space '" + id + "': unknown family '" + family + "'");
}

// ---------------------------------------------------------------------------
// Field families.

inline const std::vector<std::string>& field_families() {
  static const std::vector<std::string> families = {"metric", "zero", "random_constant", "random_traceless_constant",
                                                    "random_polynomial", "product_direction"};
  return families;
}

/// Symmetric 2-tensor field of the named family in frame components on an
/// n-dimensional chart with `coords` coordinates. Random families consume
/// the generator in the order documented for each family constructor.
inline SymTensorField make_field(const std::string& family, int n, int coords, SplitMix64& rng,
                                 const ChartPatch* chart = nullptr) {
  if (family == "metric") return metric_field(n);
  if (family == "zero") return constant_field(RealMatrix::Zero(n, n));
  if (family == "random_constant") return constant_field(random_symmetric(n, rng));
  if (family == "random_traceless_constant") return constant_field(random_traceless(n, rng));
  if (family == "random_polynomial") return random_polynomial_field(n, coords, rng);
  if (family == "product_direction") {
    if (chart == nullptr) throw PreconditionError("field 'product_direction' needs a product chart");
    return product_unstable_direction(*chart);
  }
  throw PreconditionError("unknown field family '" + family + "'");
}

// ---------------------------------------------------------------------------
// Homogeneous reduction of integrals.

/// Total volume of a compact homogeneous space; the round S³ of radius r
/// (SU(2) with the bi-invariant metric) has volume 2π²r³.
inline double homogeneous_volume(const Space& space) {
  if (space.family != "su2") throw PreconditionError("homogeneous_integral: no closed-form volume for '" + space.family + "'");
  const double r = detail::num(space.spec, "radius", 1.0);
  return 2.0 * std::numbers::pi * std::numbers::pi * r * r * r;
}

/// ∫_M f dvol for an integrand that is constant on a homogeneous space.
inline double homogeneous_integral(const Space& space, double pointwise_value) {
  return pointwise_value * homogeneous_volume(space);
}

}  // namespace kslab::harness
