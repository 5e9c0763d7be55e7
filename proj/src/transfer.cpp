#include "rlab/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace rlab {

LiftedProperty lift_property(LinearCode code, FunctionTable table) {
  if (table.p != code.p || table.N != code.N) {
    throw DimensionMismatch("table domain does not match code messages");
  }
  LiftedProperty prop{std::move(code), std::move(table), {}};
  for (std::size_t r = 0; r < prop.table.domain_size(); ++r) {
    if (prop.table.values[r] == 1) prop.members.push_back(r);
  }
  return prop;
}

double lifted_distance(const Word& w, const LiftedProperty& prop) {
  if (w.entries.size() != prop.code.M) throw DimensionMismatch("word length != M");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r : prop.members) {
    const Word cw = encode(prop.code, FieldVector(prop.code.p, vec_unrank(r, prop.code.p, prop.code.N)));
    std::size_t mismatch = 0;
    for (std::size_t j = 0; j < prop.code.M; ++j) {
      if (cw.entries[j] != w.entries[j]) ++mismatch;
    }
    best = std::min(best, static_cast<double>(mismatch) / static_cast<double>(prop.code.M));
  }
  return best;
}

namespace {

class LinearLiftRun : public StrategyRun<LinearModel> {
 public:
  LinearLiftRun(std::unique_ptr<StrategyRun<PointModel>> inner,
                std::shared_ptr<const LinearCode> code)
      : inner_(std::move(inner)), code_(std::move(code)) {}

  std::vector<std::vector<Elem>> next_queries(std::size_t round, RunRandomness& rand) override {
    auto entry_queries = inner_->next_queries(round, rand);
    std::vector<std::vector<Elem>> out;
    out.reserve(entry_queries.size());
    for (std::size_t i : entry_queries) out.push_back(code_->row_support(i));
    return out;
  }

  void observe(std::size_t round, const std::vector<Elem>& answers) override {
    inner_->observe(round, answers);
  }

  Verdict finalize(RunRandomness& rand) override { return inner_->finalize(rand); }

 private:
  std::unique_ptr<StrategyRun<PointModel>> inner_;
  std::shared_ptr<const LinearCode> code_;
};

}  // namespace

Strategy<LinearModel> to_linear_strategy(const Strategy<PointModel>& word_tester,
                                         const LinearCode& code) {
  Strategy<LinearModel> s;
  s.rounds = word_tester.rounds;
  s.max_queries = word_tester.max_queries;
  s.mode = word_tester.mode;
  auto shared_code = std::make_shared<const LinearCode>(code);
  auto inner = std::make_shared<Strategy<PointModel>>(word_tester);
  s.start = [inner, shared_code]() {
    return std::make_unique<LinearLiftRun>(inner->start(), shared_code);
  };
  return s;
}

WordTesterParams word_tester_params(const LinearCode& code, double eps, std::size_t dt_queries) {
  if (eps <= 0.0 || eps > code.delta) {
    throw DimensionMismatch("proximity parameter must lie in (0, delta]");
  }
  WordTesterParams params;
  params.delta_star = std::min(code.delta_radius, eps);
  params.r_test = static_cast<std::size_t>(std::ceil(8.0 / params.delta_star));
  params.r_dec = static_cast<std::size_t>(
      std::ceil(12.0 * std::log(10.0 * static_cast<double>(dt_queries))));
  return params;
}

namespace {

class WordReductionRun : public StrategyRun<PointModel> {
 public:
  WordReductionRun(std::shared_ptr<const Strategy<PointModel>> dt,
                   std::shared_ptr<const LinearCode> code, WordTesterParams params,
                   DecodeOptions opts)
      : dt_(std::move(dt)), code_(std::move(code)), params_(params), opts_(opts) {}

  std::vector<std::size_t> next_queries(std::size_t round, RunRandomness& rand) override {
    if (round == 0) {
      dt_rand_.emplace(rand.child(0x1df7));
      dt_run_ = dt_->start();
    }
    std::vector<std::size_t> batch;
    if (round == 0) {
      batch = linearity_queries(*code_, params_.r_test, rand.stream());
    }
    auto dt_queries = dt_run_->next_queries(round, *dt_rand_);
    dt_batch_sizes_.push_back(dt_queries.size());
    for (std::size_t msg_coord : dt_queries) {
      for (std::size_t rep = 0; rep < params_.r_dec; ++rep) {
        auto pair = decode_queries(*code_, msg_coord, rand.stream());
        batch.push_back(pair[0]);
        batch.push_back(pair[1]);
        if (opts_.spot_check) {
          auto triple = linearity_queries(*code_, 1, rand.stream());
          batch.insert(batch.end(), triple.begin(), triple.end());
        }
      }
    }
    return batch;
  }

  void observe(std::size_t round, const std::vector<Elem>& answers) override {
    std::size_t offset = 0;
    if (round == 0) {
      const std::size_t blr_len = 3 * params_.r_test;
      std::vector<Elem> blr_answers(answers.begin(), answers.begin() + blr_len);
      if (!linearity_passes(*code_, blr_answers)) reject_latch_ = true;
      offset = blr_len;
    }
    std::vector<Elem> decoded;
    decoded.reserve(dt_batch_sizes_.at(round));
    for (std::size_t qidx = 0; qidx < dt_batch_sizes_.at(round); ++qidx) {
      std::vector<std::size_t> votes(code_->p, 0);
      for (std::size_t rep = 0; rep < params_.r_dec; ++rep) {
        const Elem ans_a = answers.at(offset);
        const Elem ans_shifted = answers.at(offset + 1);
        offset += 2;
        bool ok = true;
        if (opts_.spot_check) {
          std::vector<Elem> triple(answers.begin() + offset, answers.begin() + offset + 3);
          offset += 3;
          ok = linearity_passes(*code_, triple);
        }
        if (!ok) {
          reject_latch_ = true;  // decoder declined to answer: reject outright
        } else {
          ++votes[decode_from_answers(*code_, ans_a, ans_shifted)];
        }
      }
      // plurality, ties toward the smaller element
      Elem winner = 0;
      for (Elem v = 1; v < code_->p; ++v) {
        if (votes[v] > votes[winner]) winner = v;
      }
      decoded.push_back(winner);
    }
    dt_run_->observe(round, decoded);
  }

  Verdict finalize(RunRandomness&) override {
    const Verdict dt_verdict = dt_run_->finalize(*dt_rand_);
    if (reject_latch_) return {false, std::nullopt};
    return {dt_verdict.accept, std::nullopt};
  }

 private:
  std::shared_ptr<const Strategy<PointModel>> dt_;
  std::shared_ptr<const LinearCode> code_;
  WordTesterParams params_;
  DecodeOptions opts_;
  std::unique_ptr<StrategyRun<PointModel>> dt_run_;
  std::optional<RunRandomness> dt_rand_;
  std::vector<std::size_t> dt_batch_sizes_;
  bool reject_latch_ = false;
};

}  // namespace

Strategy<PointModel> to_word_tester(const Strategy<PointModel>& dt, const LinearCode& code,
                                    double eps, bool dt_exact, DecodeOptions decode_opts) {
  if (dt.mode != Adaptivity::round_adaptive) {
    throw UnsupportedStrategy("reduction expects a round-adaptive tree evaluator");
  }
  WordTesterParams params = word_tester_params(code, eps, dt.max_queries);
  params.queries_per_decode = decode_opts.spot_check ? 5 : 2;
  params.core_max_queries =
      3 * params.r_test + params.queries_per_decode * params.r_dec * dt.max_queries;

  Strategy<PointModel> core;
  core.rounds = dt.rounds;
  core.max_queries = params.core_max_queries;
  core.mode = Adaptivity::round_adaptive;
  auto shared_dt = std::make_shared<const Strategy<PointModel>>(dt);
  auto shared_code = std::make_shared<const LinearCode>(code);
  core.start = [shared_dt, shared_code, params, decode_opts]() {
    return std::make_unique<WordReductionRun>(shared_dt, shared_code, params, decode_opts);
  };
  // Majority over independent copies keeps completeness one-sided whenever the
  // tree evaluator is exact (every copy accepts a member word outright).
  (void)dt_exact;
  return amplify(std::move(core), params.copies, Combiner::majority);
}

}  // namespace rlab
