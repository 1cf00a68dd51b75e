#pragma once

// Solved-model fixtures shared across suites. Every builder is a pure
// function of its config and the solvers are deterministic, so each model is
// solved once per process and handed out by const reference.

#include "forge/solvers.hpp"

namespace forge::fixtures {

// Split-sign rank-two bundle over the projective line: the closed-form family.
inline ansatz_config t2_rank2_config(soliton_class cls = soliton_class::cy) {
  ansatz_config cfg;
  cfg.kind = case_kind::type2;
  cfg.cls = cls;
  cfg.ell = 2;
  cfg.d_B = 1;
  cfg.i_B = 2;
  cfg.d = {0, 0};
  cfg.m = {1, 1};
  return cfg;
}

// All-positive-roots rank-two bundle over a surface base of index three.
inline ansatz_config t1_config(soliton_class cls = soliton_class::cy) {
  ansatz_config cfg;
  cfg.kind = case_kind::type1;
  cfg.cls = cls;
  cfg.ell = 2;
  cfg.d_B = 2;
  cfg.i_B = 3;
  cfg.d = {0, 0};
  cfg.m = {2, 1};
  return cfg;
}

inline ansatz_config shrinker_config() {
  ansatz_config cfg;
  cfg.kind = case_kind::type1;
  cfg.cls = soliton_class::shrinking;
  cfg.ell = 2;
  cfg.d_B = 3;
  cfg.i_B = 4;
  cfg.d = {0, 0};
  cfg.m = {2, 1};
  return cfg;
}

inline ansatz_config expander_config() {
  ansatz_config cfg;
  cfg.kind = case_kind::type1;
  cfg.cls = soliton_class::expanding;
  cfg.ell = 2;
  cfg.d_B = 1;
  cfg.i_B = 2;
  cfg.d = {0, 0};
  cfg.m = {2, 1};
  return cfg;
}

inline ansatz_config t2_rank3_config(soliton_class cls = soliton_class::cy) {
  ansatz_config cfg;
  cfg.kind = case_kind::type2;
  cfg.cls = cls;
  cfg.ell = 3;
  cfg.d_B = 3;
  cfg.i_B = 4;
  cfg.d = {0, 0, 0};
  cfg.m = {1, 2, 1};
  return cfg;
}

inline const soliton_model& t2_cy_rank2() {
  static const soliton_model m = solve_type2_rank2(t2_rank2_config(), real(0));
  return m;
}

inline const soliton_model& t1_cy() {
  static const soliton_model m = solve_type1_cy(t1_config());
  return m;
}

inline const soliton_model& t1_steady_unit() {
  static const soliton_model m = solve_steady(t1_config(soliton_class::steady), real(1));
  return m;
}

inline const soliton_model& t1_shrinker() {
  static const soliton_model m = solve_shrinker(shrinker_config());
  return m;
}

inline const soliton_model& t1_expander() {
  static const soliton_model m = solve_expander(expander_config(), real(1));
  return m;
}

inline const soliton_model& t2_rank3_cy() {
  static const soliton_model m = solve_model(t2_rank3_config(), true);
  return m;
}

inline const soliton_model& t2_rank3_steady() {
  static const soliton_model m = [] {
    ansatz_config cfg = t2_rank3_config(soliton_class::steady);
    cfg.a = real(1);
    return solve_model(cfg, true);
  }();
  return m;
}

}  // namespace forge::fixtures
