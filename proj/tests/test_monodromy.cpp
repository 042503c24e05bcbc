#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "lcross/ensemble.hpp"
#include "lcross/monodromy.hpp"
#include "lcross/rng.hpp"

using namespace lcross;

namespace {

std::set<std::string> tuple_strings(const std::vector<TranspositionSeq>& tuples) {
  std::set<std::string> out;
  for (const auto& t : tuples) out.insert(tuple_to_string(t));
  return out;
}

}  // namespace

TEST_CASE("transposition product composes left to right") {
  TranspositionSeq seq{Transposition(1, 2), Transposition(1, 3)};
  const Permutation p = product_left_to_right(seq, 3);
  // label 1: (12) sends it to 2, (13) leaves 2 alone
  REQUIRE(p[0] == 1);
  // label 2: (12) sends it to 1, (13) sends 1 to 3
  REQUIRE(p[1] == 2);
  REQUIRE(p[2] == 0);
}

TEST_CASE("identity and reversal permutations") {
  const Permutation id = identity_permutation(4);
  for (int i = 0; i < 4; ++i) REQUIRE(id[static_cast<std::size_t>(i)] == i);
  REQUIRE(reversal_permutation(4) == Permutation({3, 2, 1, 0}));
}

TEST_CASE("connectivity of a transposition tuple") {
  REQUIRE(spans_all_labels({Transposition(1, 2), Transposition(2, 3)}, 3));
  REQUIRE_FALSE(
      spans_all_labels({Transposition(1, 2), Transposition(1, 2), Transposition(1, 2)}, 3));
  REQUIRE_FALSE(spans_all_labels({Transposition(1, 2), Transposition(3, 4)}, 4));
}

TEST_CASE("admissible tuples for three crossings are the frozen eight") {
  const auto tuples = enumerate_admissible(3, 3, reversal_permutation(3));
  REQUIRE(tuples.size() == 8);
  const std::set<std::string> expected{
      "(12)(12)(13)", "(12)(13)(23)", "(12)(23)(12)", "(13)(12)(12)",
      "(13)(23)(23)", "(23)(12)(23)", "(23)(13)(12)", "(23)(23)(13)",
  };
  REQUIRE(tuple_strings(tuples) == expected);
}

TEST_CASE("admissible tuple counts for the longer alphabets") {
  REQUIRE(enumerate_admissible(3, 6, identity_permutation(3)).size() == 240);
  REQUIRE(enumerate_admissible(4, 6, reversal_permutation(4)).size() == 3840);
}

TEST_CASE("tuple transformations") {
  TranspositionSeq seq{Transposition(1, 2), Transposition(1, 3), Transposition(2, 3)};
  REQUIRE(tuple_to_string(seq) == "(12)(13)(23)");

  const Permutation rev = reversal_permutation(3);  // 1 <-> 3
  const auto conj = conjugate_tuple(seq, rev);
  REQUIRE(tuple_to_string(conj) == "(23)(13)(12)");

  const auto rseq = reversed_tuple(seq);
  REQUIRE(tuple_to_string(rseq) == "(23)(13)(12)");

  // conjugation permutes the admissible set into itself
  const auto admissible = enumerate_admissible(3, 3, rev);
  const auto names = tuple_strings(admissible);
  for (const auto& t : admissible) {
    REQUIRE(names.count(tuple_to_string(conjugate_tuple(t, rev))) == 1);
  }
}

TEST_CASE("eigenvalue matching identifies permutations with a margin") {
  std::vector<cplx> from{cplx(0.0, 0.0), cplx(1.0, 0.0), cplx(2.0, 0.0)};
  std::vector<cplx> to{cplx(1.01, 0.0), cplx(0.02, 0.0), cplx(1.98, 0.0)};
  const auto match = detail::match_eigenvalues(from, to);
  REQUIRE(match.perm[0] == 1);
  REQUIRE(match.perm[1] == 0);
  REQUIRE(match.perm[2] == 2);
  REQUIRE(match.margin > 2.0);
}

TEST_CASE("eigenvalue-drift loops around Hermitian crossings") {
  MonodromyConfig config;
  const std::set<std::string> admissible =
      tuple_strings(enumerate_admissible(3, 3, reversal_permutation(3)));

  int which = 0;
  for (const auto spec : {EnsembleSpec::gue(3), EnsembleSpec::goe(3)}) {
    ++which;
    int valid = 0;
    for (int i = 0; i < 25; ++i) {
      const MatrixPair pair = sample(spec, derive_seed(211, i * 2 + which));
      const auto record = monodromy_hermitian(pair, config);
      if (!record.valid) continue;
      ++valid;
      REQUIRE(record.tuple.size() == 3);
      REQUIRE(admissible.count(tuple_to_string(record.tuple)) == 1);
      REQUIRE(record.product == reversal_permutation(3));
    }
    REQUIRE(valid >= 20);
  }
}

TEST_CASE("complex-ensemble loops close to the identity") {
  MonodromyConfig config;
  const auto spec = EnsembleSpec::complex_ginibre(3);
  const std::set<std::string> admissible =
      tuple_strings(enumerate_admissible(3, 6, identity_permutation(3)));
  int valid = 0;
  for (int i = 0; i < 20; ++i) {
    const MatrixPair pair = sample(spec, derive_seed(223, i));
    const auto record = monodromy_complex(pair, config);
    if (!record.valid) continue;
    ++valid;
    REQUIRE(record.tuple.size() == 6);
    REQUIRE(admissible.count(tuple_to_string(record.tuple)) == 1);
    REQUIRE(record.product == identity_permutation(3));
  }
  REQUIRE(valid >= 17);
}

TEST_CASE("loop records are deterministic in the pencil") {
  MonodromyConfig config;
  const MatrixPair pair = sample(EnsembleSpec::gue(3), 331);
  const auto r1 = monodromy_hermitian(pair, config);
  const auto r2 = monodromy_hermitian(pair, config);
  REQUIRE(r1.valid == r2.valid);
  if (r1.valid) REQUIRE(tuple_to_string(r1.tuple) == tuple_to_string(r2.tuple));
}

TEST_CASE("discard bookkeeping") {
  std::vector<MonodromyRecord> records(4);
  records[0].valid = true;
  records[1].valid = true;
  records[0].tuple = {Transposition(1, 2)};
  records[1].tuple = {Transposition(1, 2)};
  records[2].discard_reason = DiscardReason::RealPartCollision;
  records[3].discard_reason = DiscardReason::TrackingAmbiguity;
  REQUIRE(discard_rate(records) == 0.5);
  const auto freq = tuple_frequencies(records);
  REQUIRE(freq.total() == 2);
  REQUIRE(freq.count("(12)") == 2);
  REQUIRE(to_string(DiscardReason::TrackingAmbiguity) == std::string("tracking_ambiguity"));
}
