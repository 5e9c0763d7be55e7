#include "rlab/codes.hpp"

namespace rlab {

namespace {

// 1-based entry index of coefficient vector a (lexicographic rank + 1).
std::size_t index_of(const LinearCode& code, const std::vector<Elem>& a) {
  return vec_rank(a, code.p) + 1;
}

std::vector<Elem> vec_add(const std::vector<Elem>& a, const std::vector<Elem>& b, std::uint32_t p) {
  std::vector<Elem> c(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) c[j] = mod_add(a[j], b[j], p);
  return c;
}

}  // namespace

LinearCode hadamard_code(std::uint32_t p, std::uint32_t N) {
  if (!is_prime(p)) throw NonPrimeN("field size must be prime");
  if (N == 0) throw DimensionMismatch("message length must be positive");
  const std::size_t m = pow_checked(p, N, kEnumerationCap);
  LinearCode code;
  code.p = p;
  code.N = N;
  code.M = m;
  code.rows.reserve(m);
  for (std::size_t r = 0; r < m; ++r) code.rows.push_back(vec_unrank(r, p, N));
  code.delta = 1.0 - 1.0 / static_cast<double>(p);
  code.delta_radius = code.delta / 4.0;
  return code;
}

Word encode(const LinearCode& code, const FieldVector& x) {
  if (x.p != code.p) throw DimensionMismatch("message field != code field");
  if (x.size() != code.N) throw DimensionMismatch("message length != N");
  Word w;
  w.p = code.p;
  w.entries.reserve(code.M);
  for (const auto& row : code.rows) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      acc += static_cast<std::uint64_t>(row[j]) * x.e[j];
    }
    w.entries.push_back(static_cast<Elem>(acc % code.p));
  }
  return w;
}

Oracle<PointModel> word_oracle(Word w) {
  return {[w = std::move(w)](const std::size_t& i) -> Elem {
    if (i < 1 || i > w.entries.size()) throw IndexOutOfRange("entry index out of range");
    return w.entries[i - 1];
  }};
}

std::vector<std::size_t> linearity_queries(const LinearCode& code, std::size_t repetitions,
                                           RandomStream& rng) {
  std::vector<std::size_t> qs;
  qs.reserve(3 * repetitions);
  for (std::size_t r = 0; r < repetitions; ++r) {
    const std::size_t ra = rng.below(code.M);
    const std::size_t rb = rng.below(code.M);
    const auto a = vec_unrank(ra, code.p, code.N);
    const auto b = vec_unrank(rb, code.p, code.N);
    qs.push_back(ra + 1);
    qs.push_back(rb + 1);
    qs.push_back(index_of(code, vec_add(a, b, code.p)));
  }
  return qs;
}

bool linearity_passes(const LinearCode& code, const std::vector<Elem>& answers) {
  if (answers.size() % 3 != 0) {
    throw DimensionMismatch("linearity check needs aligned answer triples");
  }
  for (std::size_t t = 0; t < answers.size(); t += 3) {
    if (mod_add(answers[t], answers[t + 1], code.p) != answers[t + 2]) return false;
  }
  return true;
}

Verdict local_test(const LinearCode& code, const Oracle<PointModel>& word,
                   std::size_t repetitions, std::uint64_t seed) {
  RandomStream rng(derive_seed(seed, 0x11ea));
  const auto qs = linearity_queries(code, repetitions, rng);
  std::vector<Elem> answers;
  answers.reserve(qs.size());
  for (std::size_t q : qs) answers.push_back(word.answer(q));
  return {linearity_passes(code, answers), std::nullopt};
}

std::vector<std::size_t> decode_queries(const LinearCode& code, std::size_t i, RandomStream& rng) {
  if (i < 1 || i > code.N) throw IndexOutOfRange("message coordinate out of range");
  const auto a = vec_unrank(rng.below(code.M), code.p, code.N);
  auto shifted = a;
  shifted[i - 1] = mod_add(shifted[i - 1], 1, code.p);  // a + e_i
  return {index_of(code, a), index_of(code, shifted)};
}

Elem decode_from_answers(const LinearCode& code, Elem ans_a, Elem ans_shifted) {
  return mod_sub(ans_shifted, ans_a, code.p);
}

std::optional<Elem> relaxed_decode(const LinearCode& code, const Oracle<PointModel>& word,
                                   std::size_t i, std::uint64_t seed, DecodeOptions opts) {
  RandomStream rng(derive_seed(seed, 0xdec0));
  const auto qs = decode_queries(code, i, rng);
  const Elem ans_a = word.answer(qs[0]);
  const Elem ans_shifted = word.answer(qs[1]);
  if (opts.spot_check) {
    const auto check = linearity_queries(code, 1, rng);
    std::vector<Elem> answers;
    for (std::size_t q : check) answers.push_back(word.answer(q));
    if (!linearity_passes(code, answers)) return std::nullopt;
  }
  return decode_from_answers(code, ans_a, ans_shifted);
}

std::pair<FieldVector, double> exact_distance(const LinearCode& code, const Word& w) {
  if (w.p != code.p || w.entries.size() != code.M) {
    throw DimensionMismatch("word shape does not match code");
  }
  const std::size_t total = pow_checked(code.p, code.N, kEnumerationCap);
  std::size_t best_rank = 0;
  std::size_t best_mismatch = code.M + 1;
  for (std::size_t r = 0; r < total; ++r) {
    const FieldVector x(code.p, vec_unrank(r, code.p, code.N));
    const Word cw = encode(code, x);
    std::size_t mismatch = 0;
    for (std::size_t j = 0; j < code.M && mismatch < best_mismatch; ++j) {
      if (cw.entries[j] != w.entries[j]) ++mismatch;
    }
    if (mismatch < best_mismatch) {  // strict: ties keep the smaller rank
      best_mismatch = mismatch;
      best_rank = r;
    }
  }
  return {FieldVector(code.p, vec_unrank(best_rank, code.p, code.N)),
          static_cast<double>(best_mismatch) / static_cast<double>(code.M)};
}

}  // namespace rlab
