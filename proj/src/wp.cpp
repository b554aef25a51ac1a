#include "pwp/wp.hpp"

#include <cmath>
#include <optional>
#include <random>

#include "pwp/errors.hpp"

namespace pwp {

namespace {

// Branch weights of a probabilistic assignment, evaluated in the pre-state.
struct Weighing {
  const Stmt* stmt = nullptr;
  std::vector<double> weights;
  std::int64_t lo = 0;  // first index of an indexed assignment
};

const std::string& target_of(const Stmt& s) {
  if (const auto* pa = std::get_if<ProbAssign>(&s.v)) return pa->target;
  return std::get<IndexedProbAssign>(s.v).target;
}

double weight_value(const Expr& w, const Env& env) {
  const Value v = eval(w, env);
  double x;
  try {
    x = v.to_real();
  } catch (const TypeMismatch&) {
    throw WeightError("branch weight must be a real number, got " + to_string(v));
  }
  if (!(x >= 0.0)) throw WeightError("negative branch weight " + to_string(v));
  return x;
}

Weighing weigh(const Stmt& s, const Env& env) {
  Weighing out;
  out.stmt = &s;
  if (const auto* pa = std::get_if<ProbAssign>(&s.v)) {
    for (const auto& b : pa->branches) out.weights.push_back(weight_value(b.weight, env));
  } else {
    const auto& ip = std::get<IndexedProbAssign>(s.v);
    const std::int64_t lo = eval(ip.lo, env).to_index();
    const std::int64_t hi = eval(ip.hi, env).to_index();
    if (hi <= lo) throw StaticError("probabilistic assignment to '" + ip.target + "' has no branches");
    out.lo = lo;
    out.weights.reserve(static_cast<std::size_t>(hi - lo));
    for (std::int64_t k = lo; k < hi; ++k) {
      out.weights.push_back(weight_value(ip.weight, env.with(ip.index, Value(Integer(static_cast<long>(k))))));
    }
  }
  double total = 0.0;
  for (double w : out.weights) total += w;
  if (std::abs(total - 1.0) > kWeightTolerance) {
    throw WeightError("branch weights of '" + target_of(s) + "' sum to " + std::to_string(total));
  }
  return out;
}

Value branch_value(const Weighing& w, std::size_t k, const Env& env) {
  if (const auto* pa = std::get_if<ProbAssign>(&w.stmt->v)) return eval(pa->branches[k].value, env);
  const auto& ip = std::get<IndexedProbAssign>(w.stmt->v);
  const auto index = w.lo + static_cast<std::int64_t>(k);
  return eval(ip.value, env.with(ip.index, Value(Integer(static_cast<long>(index)))));
}

std::vector<Outcome> exec(const Program& p, std::vector<Outcome> dist);

std::vector<Outcome> step(const Stmt& s, std::vector<Outcome> dist) {
  if (std::holds_alternative<Skip>(s.v)) return dist;
  if (const auto* a = std::get_if<Assign>(&s.v)) {
    for (auto& leaf : dist) leaf.env.set(a->target, eval(a->rhs, leaf.env));
    return dist;
  }
  if (const auto* loop = std::get_if<DoTimes>(&s.v)) {
    std::vector<Outcome> out;
    for (auto& leaf : dist) {
      const std::int64_t n = loop_count(*loop, leaf.env);
      std::vector<Outcome> sub{std::move(leaf)};
      for (std::int64_t i = 0; i < n; ++i) sub = exec(loop->body, std::move(sub));
      for (auto& o : sub) out.push_back(std::move(o));
    }
    return out;
  }
  const std::string& target = target_of(s);
  std::vector<Outcome> out;
  for (const auto& leaf : dist) {
    const Weighing w = weigh(s, leaf.env);
    for (std::size_t k = 0; k < w.weights.size(); ++k) {
      if (w.weights[k] == 0.0) continue;
      out.push_back({leaf.weight * w.weights[k], leaf.env.with(target, branch_value(w, k, leaf.env))});
    }
  }
  return out;
}

std::vector<Outcome> exec(const Program& p, std::vector<Outcome> dist) {
  for (const auto& s : p.stmts) dist = step(s, std::move(dist));
  return dist;
}

}  // namespace

double Distribution::total_weight() const {
  double total = 0.0;
  for (const auto& o : outcomes) total += o.weight;
  return total;
}

double Distribution::expect(const Expr& post) const {
  double acc = 0.0;
  for (const auto& o : outcomes) acc += o.weight * eval(post, o.env).to_real();
  return acc;
}

Distribution final_distribution(const Program& p, const Env& env) {
  return Distribution{exec(p, {Outcome{1.0, env}})};
}

double wp(const Program& p, const Expr& post, const Env& env) {
  return final_distribution(p, env).expect(post);
}

Env run_deterministic(const Program& p, const Env& env) {
  Distribution d = final_distribution(p, env);
  if (d.outcomes.size() != 1) {
    throw Error("program is not deterministic: " + std::to_string(d.outcomes.size()) + " outcomes");
  }
  return std::move(d.outcomes.front().env);
}

// ---------------------------------------------------------------------------
// Backward substitution

namespace {

Expr wp_program(const Program& p, Expr post, const Env& count_env);

Expr wp_statement(const Stmt& s, Expr post, const Env& count_env) {
  if (std::holds_alternative<Skip>(s.v)) return post;
  if (const auto* a = std::get_if<Assign>(&s.v)) return subst(post, a->target, a->rhs);
  if (const auto* pa = std::get_if<ProbAssign>(&s.v)) {
    std::optional<Expr> acc;
    for (const auto& b : pa->branches) {
      Expr term = b.weight * subst(post, pa->target, b.value);
      acc = acc ? *acc + term : term;
    }
    return *acc;
  }
  if (const auto* ip = std::get_if<IndexedProbAssign>(&s.v)) {
    // The index binds over the whole summand, so it must not capture a free
    // variable of the post-expectation.
    std::string index = ip->index;
    Expr value = ip->value;
    Expr weight = ip->weight;
    if (post.has_free(index)) {
      std::vector<std::string> avoid = post.free_vars();
      for (const auto& n : value.free_vars()) avoid.push_back(n);
      for (const auto& n : weight.free_vars()) avoid.push_back(n);
      index = fresh_name(index, avoid);
      value = subst(value, ip->index, Expr::var(index));
      weight = subst(weight, ip->index, Expr::var(index));
    }
    return Expr::sum(index, ip->lo, ip->hi, weight * subst(post, ip->target, value));
  }
  const auto& loop = std::get<DoTimes>(s.v);
  const std::int64_t n = loop_count(loop, count_env);
  for (std::int64_t i = 0; i < n; ++i) post = wp_program(loop.body, std::move(post), count_env);
  return post;
}

Expr wp_program(const Program& p, Expr post, const Env& count_env) {
  for (auto it = p.stmts.rbegin(); it != p.stmts.rend(); ++it) {
    post = wp_statement(*it, std::move(post), count_env);
  }
  return post;
}

}  // namespace

Expr wp_subst(const Program& p, const Expr& post, const Env& count_env) {
  return wp_program(p, post, count_env);
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Frame {
  const Program* prog;
  std::size_t next;
  std::int64_t loops_left;
};

struct Machine {
  Env env;
  std::vector<Frame> stack;
  std::optional<Weighing> pending;

  // Runs until finished, or until a choice is pending and `gen` is null.
  void advance(std::mt19937_64* gen) {
    for (;;) {
      if (pending) {
        if (!gen) return;
        resolve(*gen);
        continue;
      }
      if (stack.empty()) return;
      Frame& f = stack.back();
      if (f.next == f.prog->stmts.size()) {
        if (f.loops_left > 0) {
          --f.loops_left;
          f.next = 0;
        } else {
          stack.pop_back();
        }
        continue;
      }
      const Stmt& s = f.prog->stmts[f.next++];
      if (const auto* a = std::get_if<Assign>(&s.v)) {
        env.set(a->target, eval(a->rhs, env));
      } else if (const auto* loop = std::get_if<DoTimes>(&s.v)) {
        const std::int64_t n = loop_count(*loop, env);
        if (n > 0) stack.push_back(Frame{&loop->body, 0, n - 1});
      } else if (!std::holds_alternative<Skip>(s.v)) {
        pending = weigh(s, env);
      }
    }
  }

  void resolve(std::mt19937_64& gen) {
    const Weighing& w = *pending;
    double total = 0.0;
    for (double x : w.weights) total += x;
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53 * total;
    std::size_t pick = w.weights.size();
    double cum = 0.0;
    for (std::size_t k = 0; k < w.weights.size(); ++k) {
      if (w.weights[k] == 0.0) continue;
      cum += w.weights[k];
      pick = k;
      if (u < cum) break;
    }
    Value v = branch_value(w, pick, env);
    env.set(target_of(*w.stmt), std::move(v));
    pending.reset();
  }
};

}  // namespace

struct Sampler::Impl {
  std::shared_ptr<const Program> program;
  Machine prefix;
};

Sampler::Sampler(Program p, Env env) : impl_(std::make_unique<Impl>()) {
  impl_->program = std::make_shared<const Program>(std::move(p));
  impl_->prefix.env = std::move(env);
  impl_->prefix.stack.push_back(Frame{impl_->program.get(), 0, 0});
  impl_->prefix.advance(nullptr);
}

Sampler::~Sampler() = default;
Sampler::Sampler(Sampler&&) noexcept = default;
Sampler& Sampler::operator=(Sampler&&) noexcept = default;

Env Sampler::run(std::uint64_t seed) const {
  Machine m = impl_->prefix;
  std::mt19937_64 gen(splitmix64(seed));
  m.advance(&gen);
  return std::move(m.env);
}

Env sample_run(const Program& p, const Env& env, std::uint64_t seed) {
  return Sampler(p, env).run(seed);
}

}  // namespace pwp
