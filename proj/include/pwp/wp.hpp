#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "pwp/lang.hpp"

namespace pwp {

// Tolerance on sum(weights) = 1 for every probabilistic assignment.
inline constexpr double kWeightTolerance = 1e-9;

struct Outcome {
  double weight;
  Env env;
};

// Finite-support distribution over final environments. Leaves are kept in
// execution order (branch order, depth first); equal environments are not
// merged.
struct Distribution {
  std::vector<Outcome> outcomes;

  double total_weight() const;
  // Sum of weight * eval(post, env), accumulated in leaf order.
  double expect(const Expr& post) const;
};

// Forward semantics: pushes `env` through `p`, splitting at every
// probabilistic assignment. Zero-weight branches are dropped. Throws
// WeightError, StaticError, or any evaluation error.
Distribution final_distribution(const Program& p, const Env& env);

// Expected value of `post` after running `p` from `env`; for a {0,1}-valued
// post this is the probability that `p` establishes it.
double wp(const Program& p, const Expr& post, const Env& env);

// Backward semantics by substitution. Loop counts are evaluated in
// `count_env` and must be static there.
Expr wp_subst(const Program& p, const Expr& post, const Env& count_env = {});

// Runs a program that contains no genuine probabilistic choice (every
// probabilistic assignment has a single branch of positive weight).
Env run_deterministic(const Program& p, const Env& env);

// Seeded forward sampler. The deterministic prefix of the program (up to and
// including the weights of the first probabilistic assignment) is executed
// once at construction and shared by every run.
class Sampler {
 public:
  Sampler(Program p, Env env);
  ~Sampler();
  Sampler(Sampler&&) noexcept;
  Sampler& operator=(Sampler&&) noexcept;

  Env run(std::uint64_t seed) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// One seeded forward execution; identical seeds give identical results.
Env sample_run(const Program& p, const Env& env, std::uint64_t seed);

}  // namespace pwp
