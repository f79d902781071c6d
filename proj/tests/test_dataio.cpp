#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "wmvipd/dataio.hpp"

using namespace wmvipd;

TEST_CASE("parse_libsvm basic row") {
  std::istringstream in("1.0 1:0.5 3:-0.25\n");
  Dataset d = parse_libsvm(in);
  REQUIRE(d.B.rows() == 1);
  REQUIRE(d.B.cols() == 3);
  CHECK(d.b == DVec{1.0});
  CHECK(d.B(0, 0) == 0.5);
  CHECK(d.B(0, 1) == 0.0);
  CHECK(d.B(0, 2) == -0.25);
}

TEST_CASE("parse_libsvm skips blanks and comments") {
  std::istringstream in("# header comment\n\n  \n2.5 2:1.0\n#tail\n-1 1:3 2:4\n");
  Dataset d = parse_libsvm(in);
  REQUIRE(d.B.rows() == 2);
  REQUIRE(d.B.cols() == 2);
  CHECK(d.b == DVec{2.5, -1.0});
  CHECK(d.B(0, 0) == 0.0);
  CHECK(d.B(0, 1) == 1.0);
  CHECK(d.B(1, 0) == 3.0);
}

TEST_CASE("parse_libsvm expected width") {
  std::istringstream in("1 1:2\n");
  Dataset d = parse_libsvm(in, 5);
  CHECK(d.B.cols() == 5);

  std::istringstream in2("1 7:2\n");
  CHECK_THROWS_AS(parse_libsvm(in2, 5), ParseError);
}

TEST_CASE("parse_libsvm errors carry line numbers") {
  std::istringstream empty("");
  CHECK_THROWS_WITH(parse_libsvm(empty), "no rows");

  std::istringstream bad_tok("1.0 1:0.5\n2.0 oops\n");
  CHECK_THROWS_WITH(parse_libsvm(bad_tok), Catch::Matchers::ContainsSubstring("line 2"));

  std::istringstream bad_order("1.0 3:1 2:1\n");
  CHECK_THROWS_WITH(parse_libsvm(bad_order), Catch::Matchers::ContainsSubstring("non-increasing"));

  std::istringstream zero_idx("1.0 0:1\n");
  CHECK_THROWS_WITH(parse_libsvm(zero_idx), Catch::Matchers::ContainsSubstring("< 1"));

  std::istringstream bad_val("1.0 1:abc\n");
  CHECK_THROWS_AS(parse_libsvm(bad_val), ParseError);

  std::istringstream bad_label("xyz 1:1\n");
  CHECK_THROWS_WITH(parse_libsvm(bad_label), Catch::Matchers::ContainsSubstring("line 1"));
}

TEST_CASE("the shipped dataset parses to 74x27") {
  std::ifstream in(oracles::dataset_path());
  REQUIRE(in.good());
  Dataset d = parse_libsvm(in);
  CHECK(d.B.rows() == 74);
  CHECK(d.B.cols() == 27);
  CHECK(d.b.size() == 74);
  for (double v : d.B.values()) {
    CHECK(v <= 1.0);
    CHECK(v >= -1.0);
  }
}

TEST_CASE("write_trace_csv formats") {
  Trace t;
  t.status = RunStatus::MaxIterReached;
  std::ostringstream out;
  write_trace_csv(t, out);
  CHECK(out.str() == "iteration,prox_evals,kkt,elapsed_seconds\n# status=MaxIterReached\n");

  Trace t2;
  t2.status = RunStatus::Converged;
  t2.records.push_back({0, 0, 1.0, 0.0});
  std::ostringstream out2;
  write_trace_csv(t2, out2);
  CHECK(out2.str() == "iteration,prox_evals,kkt,elapsed_seconds\n0,0,1,0\n# status=Converged\n");
}

TEST_CASE("trace CSV round-trip is bit exact") {
  Xorshift64Star rng(41);
  for (int rep = 0; rep < 20; ++rep) {
    Trace t;
    t.status = rep % 3 == 0   ? RunStatus::Converged
               : rep % 3 == 1 ? RunStatus::Diverged
                              : RunStatus::MaxIterReached;
    t.metadata.emplace_back("algo", "ncpdhg");
    t.metadata.emplace_back("gamma_x", "0.024");
    const int n = static_cast<int>(rng.next_below(30));
    std::uint64_t it = 0;
    for (int i = 0; i < n; ++i) {
      it += rng.next_below(100);
      t.records.push_back({it, rng.next_below(1u << 20), std::exp(rng.uniform(-40, 5)),
                           rng.uniform(0, 1e3)});
    }
    std::ostringstream out;
    write_trace_csv(t, out);
    std::istringstream in(out.str());
    Trace back = read_trace_csv(in);
    REQUIRE(back.records.size() == t.records.size());
    CHECK(back.status == t.status);
    CHECK(back.metadata == t.metadata);
    for (std::size_t i = 0; i < t.records.size(); ++i) {
      CHECK(back.records[i].iteration == t.records[i].iteration);
      CHECK(back.records[i].prox_evals == t.records[i].prox_evals);
      CHECK(back.records[i].kkt == t.records[i].kkt);  // bitwise via 17 digits
      CHECK(back.records[i].elapsed_seconds == t.records[i].elapsed_seconds);
    }
  }
}

TEST_CASE("read_trace_csv rejects malformed input") {
  std::istringstream bad_header("iter,prox\n# status=Converged\n");
  CHECK_THROWS_WITH(read_trace_csv(bad_header), Catch::Matchers::ContainsSubstring("header"));

  std::istringstream bad_arity("iteration,prox_evals,kkt,elapsed_seconds\n1,2,3\n# status=Converged\n");
  CHECK_THROWS_AS(read_trace_csv(bad_arity), ParseError);

  std::istringstream no_status("iteration,prox_evals,kkt,elapsed_seconds\n1,2,3,4\n");
  CHECK_THROWS_WITH(read_trace_csv(no_status), Catch::Matchers::ContainsSubstring("status"));
}
