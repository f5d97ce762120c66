#pragma once

#include "weylbound/rational.hpp"

#include <optional>
#include <string_view>

namespace weylbound::reference {

// Literature values the computations are compared against. Nothing here is
// computed; the *_source functions say which table a value comes from.

// rho(k) for the mean-value minor-arc exponent, k = 9..20.
std::optional<Rational> published_rho(int k);
// G~(k) upper bounds from the same computation, k = 8..20.
std::optional<int> published_gtilde(int k);
// Parsell's rho(k), k = 11..20.
std::optional<Rational> parsell_rho(int k);
// Parsell's G~(k), k = 11..20.
std::optional<int> parsell_gtilde(int k);
// Ford's G~(k), k = 9..10.
std::optional<int> ford_gtilde(int k);

// Weyl: sigma(k)^{-1} = 2^{k-1}.
Rational weyl_rho(int k);
// Heath-Brown (k >= 6, on m_3): tau(k)^{-1} = 3 2^{k-3}.
Rational heath_brown_rho(int k);

std::string_view published_rho_source(int k);
std::string_view published_gtilde_source(int k);

}  // namespace weylbound::reference
