#pragma once

// The two reference constructions shipped with the tools.

#include "qldpc/config.hpp"

namespace qldpc::presets {

/// (6,12)-regular code on PSL2(5) x PSL2(5): n = 3600, m = 1800.
inline CosetConfig psl2x5_6_12() {
  const RawMatrix I{1, 0, 0, 1}, T{1, 1, 0, 1}, S{0, -1, 1, 0}, Tinv{1, -1, 0, 1}, u{1, 2, -1, -1};
  CosetConfig c;
  c.group = GroupKind::PSL2xPSL2;
  c.p = 5;
  c.K = {{u, u}};
  c.g_omega = {{T, I}, {S, I}, {Tinv, I}};
  c.g_omega_bar = {{I, T}, {I, S}, {I, Tinv}};
  return c;
}

/// (4,8)-regular Cayley-graph code on DET4(13): n = 8736, m = 4368.
inline CayleyConfig det4_13_4_8() { return {13, {1, 2, 12, 10}, {11, 7, 5, 6}}; }

/// Generator pair with g+ = g-^-1; spans only a cyclic subgroup, kept as a
/// negative example.
inline CayleyConfig det4_13_degenerate() { return {13, {9, 9, 12, 10}, {11, 7, 5, 6}}; }

}  // namespace qldpc::presets
