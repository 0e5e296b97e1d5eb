#include "dynwidth/trace.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "dynwidth/engine.hpp"
#include "dynwidth/errors.hpp"
#include "dynwidth/oracle.hpp"

namespace dynwidth {

namespace {

bool parse_u64(const std::string& t, u64& v) {
  const char* b = t.data();
  const char* e = b + t.size();
  auto [p, ec] = std::from_chars(b, e, v, 10);
  return ec == std::errc() && p == e && !t.empty();
}

bool parse_i64(const std::string& t, i64& v) {
  const char* b = t.data();
  const char* e = b + t.size();
  auto [p, ec] = std::from_chars(b, e, v, 10);
  return ec == std::errc() && p == e && !t.empty();
}

}  // namespace

std::vector<TraceOp> parse_trace(std::istream& in) {
  std::vector<TraceOp> ops;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);  // comment runs to end of line
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank
    std::vector<std::string> rest;
    std::string t;
    while (ls >> t) rest.push_back(t);
    TraceOp op;
    if (tok == "I") {
      if (rest.size() != 3) throw ParseError(lineno, "expected I <id> <x> <y>");
      op.insert = true;
      if (!parse_u64(rest[0], op.id)) throw ParseError(lineno, "bad id");
      if (!parse_i64(rest[1], op.x) || !parse_i64(rest[2], op.y))
        throw ParseError(lineno, "bad coordinate");
      if (std::abs(op.x) > kCoordBound || std::abs(op.y) > kCoordBound)
        throw ParseError(lineno, "coordinate outside the 2^30 bound");
    } else if (tok == "D") {
      if (rest.size() != 1) throw ParseError(lineno, "expected D <id>");
      op.insert = false;
      if (!parse_u64(rest[0], op.id)) throw ParseError(lineno, "bad id");
    } else {
      throw ParseError(lineno, "unknown op '" + tok + "'");
    }
    ops.push_back(op);
  }
  return ops;
}

std::vector<TraceOp> parse_trace_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError(0, "cannot open trace file " + path);
  return parse_trace(f);
}

std::string print_trace(const std::vector<TraceOp>& ops) {
  std::string out;
  for (const TraceOp& op : ops) {
    if (op.insert)
      out += "I " + std::to_string(op.id) + " " + std::to_string(op.x) + " " +
             std::to_string(op.y) + "\n";
    else
      out += "D " + std::to_string(op.id) + "\n";
  }
  return out;
}

namespace {

constexpr i64 kDiskR = 1'000'000;

// raw rejection sampling; std::uniform_int_distribution is not pinned down
// across library versions, and traces must be stable bytes
u64 rnd_below(std::mt19937_64& g, u64 n) {
  assert(n > 0);
  u64 lim = u64(-1) - u64(-1) % n;  // largest multiple of n representable
  u64 v;
  do {
    v = g();
  } while (v >= lim);
  return v % n;
}

i64 rnd_range(std::mt19937_64& g, i64 lo, i64 hi) {
  return lo + i64(rnd_below(g, u64(hi - lo) + 1));
}

Point rnd_disk(std::mt19937_64& g, i64 r) {
  for (;;) {
    i64 x = rnd_range(g, -r, r);
    i64 y = rnd_range(g, -r, r);
    if (x * x + y * y <= r * r) return Point{x, y};
  }
}

std::vector<TraceOp> gen_incremental(std::size_t n, std::mt19937_64& g) {
  std::vector<TraceOp> ops;
  ops.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point p = rnd_disk(g, kDiskR);
    ops.push_back({true, u64(i), p.x, p.y});
  }
  return ops;
}

std::vector<TraceOp> gen_decremental(std::size_t n, std::mt19937_64& g) {
  std::vector<TraceOp> ops = gen_incremental(n, g);
  std::vector<u64> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n; i-- > 1;)
    std::swap(order[i], order[rnd_below(g, i + 1)]);
  for (u64 id : order) ops.push_back({false, id, 0, 0});
  return ops;
}

std::vector<TraceOp> gen_mixed(std::size_t n, std::mt19937_64& g) {
  std::vector<TraceOp> ops;
  ops.reserve(2 * n);
  std::vector<u64> live;
  u64 fresh = 0;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    bool ins;
    if (live.empty())
      ins = true;
    else if (live.size() >= n)
      ins = false;
    else
      ins = rnd_below(g, 100) < 60;
    if (ins) {
      Point p = rnd_disk(g, kDiskR);
      ops.push_back({true, fresh, p.x, p.y});
      live.push_back(fresh++);
    } else {
      std::size_t j = rnd_below(g, live.size());
      ops.push_back({false, live[j], 0, 0});
      live[j] = live.back();
      live.pop_back();
    }
  }
  return ops;
}

// Near-cocircular base ring, then insert/delete pairs just outside it; each
// inserted point shadows a whole arc of ring vertices, so every pair turns
// over a hull-sized batch of features.
std::vector<TraceOp> gen_churn(std::size_t n, std::mt19937_64& g) {
  std::size_t m = std::max<std::size_t>(8, 3 * n / 4);
  const double pi = 3.14159265358979323846;
  std::vector<TraceOp> ops;
  ops.reserve(3 * m);
  for (std::size_t i = 0; i < m; ++i) {
    double th = 2 * pi * double(i) / double(m);
    i64 x = i64(std::llround(double(kDiskR) * std::cos(th)));
    i64 y = i64(std::llround(double(kDiskR) * std::sin(th)));
    ops.push_back({true, u64(i), x, y});
  }
  for (std::size_t j = 0; j < m; ++j) {
    double th = 2 * pi * double(rnd_below(g, u64(1) << 30)) /
                double(u64(1) << 30);
    double r = double(kDiskR) * 1.02;
    i64 x = i64(std::llround(r * std::cos(th)));
    i64 y = i64(std::llround(r * std::sin(th)));
    u64 id = u64(m + j);
    ops.push_back({true, id, x, y});
    ops.push_back({false, id, 0, 0});
  }
  return ops;
}

}  // namespace

std::vector<TraceOp> gen_trace(const std::string& mode, std::size_t n,
                               u64 seed) {
  if (n < 1) throw Error("generator needs n >= 1");
  std::mt19937_64 g(seed);
  if (mode == "incremental") return gen_incremental(n, g);
  if (mode == "decremental") return gen_decremental(n, g);
  if (mode == "mixed") return gen_mixed(n, g);
  if (mode == "churn") return gen_churn(n, g);
  throw Error("unknown generator mode '" + mode + "'");
}

namespace {

WidthReport apply_op(WidthEngine& eng, const TraceOp& op) {
  return op.insert ? eng.insert(op.id, Point{op.x, op.y}) : eng.erase(op.id);
}

std::string float_cell(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string num_str(const int256_t& v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

}  // namespace

int run_trace(const std::vector<TraceOp>& ops, std::ostream& csv,
              std::ostream& err, double alpha) {
  WidthEngine eng(alpha);
  csv << "op_index,op_kind,width_sq_num,width_sq_den,width_float,k,"
         "corners_added,corners_removed,sides_added,sides_removed,time_ns\n";
  for (std::size_t i = 0; i < ops.size(); ++i) {
    WidthReport r;
    try {
      r = apply_op(eng, ops[i]);
    } catch (const Error& e) {
      err << "op " << i << ": " << e.what() << "\n";
      return 3;
    }
    SquaredDistance w = r.width_sq.canonical();
    csv << i << ',' << (ops[i].insert ? 'I' : 'D') << ',' << num_str(w.num())
        << ',' << num_str(w.den()) << ',' << float_cell(r.width) << ',' << r.k
        << ',' << r.corners_added << ',' << r.corners_removed << ','
        << r.sides_added << ',' << r.sides_removed << ",0\n";
  }
  return 0;
}

int verify_trace(const std::vector<TraceOp>& ops, std::ostream& err,
                 double alpha, bool fault_inject) {
  WidthEngine eng(alpha);
  std::size_t fault_at = ops.size() / 2;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    WidthReport r;
    try {
      r = apply_op(eng, ops[i]);
    } catch (const Error& e) {
      err << "op " << i << ": " << e.what() << "\n";
      return 3;
    }
    SquaredDistance got = r.width_sq;
    if (fault_inject && i == fault_at)
      got = SquaredDistance::ratio(got.num() + 1, got.den());
    oracle::StaticWidthResult cal = oracle::calipers_width(eng.live_points());
    if (cmp_sqdist(got, cal.width_sq) != 0) {
      err << "mismatch at op " << i << ": engine " << got.str() << " oracle "
          << cal.width_sq.str() << "\n";
      return 4;
    }
  }
  return 0;
}

}  // namespace dynwidth
