#include <doctest.h>

#include <set>
#include <sstream>
#include <vector>

#include "dynwidth/errors.hpp"
#include "dynwidth/trace.hpp"
#include "test_util.hpp"

using namespace dynwidth;

TEST_CASE("parse accepts the documented forms") {
  std::istringstream in(
      "# build a square\n"
      "I 1 0 0\n"
      "\n"
      "I 2 2 0\r\n"
      "  I 3 2 2   # trailing comment\n"
      "D 1\n"
      "I 4 -1073741824 1073741824\n");
  auto ops = parse_trace(in);
  REQUIRE(ops.size() == 5);
  CHECK(ops[0] == TraceOp{true, 1, 0, 0});
  CHECK(ops[1] == TraceOp{true, 2, 2, 0});
  CHECK(ops[2] == TraceOp{true, 3, 2, 2});
  CHECK(ops[3] == TraceOp{false, 1, 0, 0});
  CHECK(ops[4] == TraceOp{true, 4, -1073741824, 1073741824});
}

TEST_CASE("print and parse round-trip") {
  auto ops = gen_trace("mixed", 50, 17);
  std::istringstream in(print_trace(ops));
  CHECK(parse_trace(in) == ops);
}

TEST_CASE("parse rejects malformed lines with their line number") {
  auto line_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_trace(in);
    } catch (const ParseError& e) {
      return e.line;
    }
    return -1;
  };
  CHECK(line_of("I 1 0 0\nX 2 1 1\n") == 2);
  CHECK(line_of("I 1 0\n") == 1);          // missing coordinate
  CHECK(line_of("I 1 0 0 9\n") == 1);      // extra token
  CHECK(line_of("D\n") == 1);              // missing id
  CHECK(line_of("I one 0 0\n") == 1);      // non-numeric id
  CHECK(line_of("I 1 2x 0\n") == 1);       // trailing junk inside a token
  CHECK(line_of("I -1 0 0\n") == 1);       // ids are unsigned
  CHECK(line_of("# ok\nI 1 0 1073741825\n") == 2);  // beyond the coord bound
  CHECK(line_of("I 1 -1073741825 0\n") == 1);
  CHECK(line_of("I 1 1073741824 0\n") == -1);  // the bound itself is legal
  CHECK_THROWS_AS(parse_trace_file("/nonexistent/trace.txt"), ParseError);
}

TEST_CASE("generators are pure functions of mode, n, seed") {
  for (const char* mode : {"incremental", "decremental", "mixed", "churn"}) {
    auto a = gen_trace(mode, 33, 9);
    auto b = gen_trace(mode, 33, 9);
    CHECK(a == b);
    CHECK(a != gen_trace(mode, 33, 10));
    CHECK(print_trace(a) == print_trace(b));
  }
  CHECK_THROWS_AS(gen_trace("sideways", 10, 1), Error);
  CHECK_THROWS_AS(gen_trace("mixed", 0, 1), Error);
}

TEST_CASE("generator workload shapes") {
  auto inc = gen_trace("incremental", 37, 2);
  CHECK(inc.size() == 37);
  for (std::size_t i = 0; i < inc.size(); ++i) {
    CHECK(inc[i].insert);
    CHECK(inc[i].id == i);
    CHECK(i64(inc[i].x) * inc[i].x + i64(inc[i].y) * inc[i].y <=
          i64(1000000) * 1000000);
  }

  auto dec = gen_trace("decremental", 37, 2);
  REQUIRE(dec.size() == 74);
  CHECK(std::vector<TraceOp>(dec.begin(), dec.begin() + 37) == inc);
  std::set<u64> deleted;
  for (std::size_t i = 37; i < 74; ++i) {
    CHECK_FALSE(dec[i].insert);
    CHECK(deleted.insert(dec[i].id).second);  // each id exactly once
    CHECK(dec[i].id < 37);
  }

  auto mix = gen_trace("mixed", 37, 2);
  CHECK(mix.size() == 74);
  std::set<u64> live;
  for (const auto& op : mix) {
    if (op.insert)
      CHECK(live.insert(op.id).second);
    else
      CHECK(live.erase(op.id) == 1);
    CHECK(live.size() <= 37);
  }

  std::size_t m = 3 * 37 / 4;  // churn ring size
  auto ch = gen_trace("churn", 37, 2);
  REQUIRE(ch.size() == 3 * m);
  for (std::size_t i = 0; i < m; ++i) {
    CHECK(ch[i].insert);
    CHECK(ch[i].id == i);
  }
  for (std::size_t j = 0; j < m; ++j) {
    const auto& ins = ch[m + 2 * j];
    const auto& del = ch[m + 2 * j + 1];
    CHECK(ins.insert);
    CHECK_FALSE(del.insert);
    CHECK(ins.id == m + j);
    CHECK(del.id == ins.id);
    // the visitor lands just outside the ring
    CHECK(i64(ins.x) * ins.x + i64(ins.y) * ins.y >
          i64(1000000) * 1000000);
  }
  CHECK(gen_trace("churn", 1, 5).size() == 3 * 8);  // ring floor
}

TEST_CASE("replay emits the pinned square CSV") {
  std::istringstream in("I 1 0 0\nI 2 2 0\nI 3 2 2\nI 4 0 2\n");
  auto ops = parse_trace(in);
  std::ostringstream csv, err;
  CHECK(run_trace(ops, csv, err, 0.25) == 0);
  CHECK(err.str().empty());
  CHECK(csv.str() ==
        "op_index,op_kind,width_sq_num,width_sq_den,width_float,k,"
        "corners_added,corners_removed,sides_added,sides_removed,time_ns\n"
        "0,I,0,1,0,0,0,0,0,0,0\n"
        "1,I,0,1,0,0,0,0,0,0,0\n"
        "2,I,2,1,1.4142135623730951,6,3,0,3,0,0\n"
        "3,I,4,1,2,8,3,2,2,1,0\n");
}

TEST_CASE("replay is byte-identical and ends traces cleanly") {
  auto ops = gen_trace("decremental", 60, 21);
  std::ostringstream a, b, err;
  CHECK(run_trace(ops, a, err, 0.25) == 0);
  CHECK(run_trace(ops, b, err, 0.25) == 0);
  CHECK(a.str() == b.str());
  // the deletes drain everything: the last row reports a zero width
  auto csv = a.str();
  auto last = csv.rfind("\n", csv.size() - 2);
  CHECK(csv.substr(last + 1) == "119,D,0,1,0,0,0,0,0,0,0\n");
}

TEST_CASE("replay reports semantic errors") {
  std::ostringstream csv, err;
  CHECK(run_trace({{false, 99, 0, 0}}, csv, err, 0.25) == 3);
  CHECK_FALSE(err.str().empty());

  std::ostringstream csv2, err2;
  std::vector<TraceOp> dup = {{true, 1, 0, 0}, {true, 1, 5, 5}};
  CHECK(run_trace(dup, csv2, err2, 0.25) == 3);
  CHECK_FALSE(err2.str().empty());
}

TEST_CASE("verification passes honest runs and catches an injected fault") {
  for (const char* mode : {"incremental", "mixed", "churn"}) {
    auto ops = gen_trace(mode, 24, 31);
    std::ostringstream err;
    CHECK(verify_trace(ops, err, 0.25, false) == 0);
    CHECK(err.str().empty());

    std::ostringstream err2;
    CHECK(verify_trace(ops, err2, 0.25, true) == 4);
    CHECK(err2.str().find("mismatch at op " +
                          std::to_string(ops.size() / 2)) != std::string::npos);
  }

  std::ostringstream err;  // semantic failure inside verification
  CHECK(verify_trace({{false, 4, 0, 0}}, err, 0.25, false) == 3);
}
