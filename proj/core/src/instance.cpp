#include "lopcut/instance.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <random>
#include <sstream>

#include "lopcut/error.hpp"

namespace lopcut {

bool Permutation::valid() const {
  std::vector<bool> seen(order.size() + 1, false);
  for (int v : order) {
    if (v < 1 || static_cast<std::size_t>(v) > order.size() || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

std::vector<int> Permutation::positions() const {
  std::vector<int> pos(order.size() + 1, -1);
  for (std::size_t k = 0; k < order.size(); ++k) pos[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
  return pos;
}

Permutation Permutation::reversed() const { return Permutation{{order.rbegin(), order.rend()}}; }

Permutation Permutation::identity(int n) {
  Permutation p;
  p.order.resize(static_cast<std::size_t>(n));
  std::iota(p.order.begin(), p.order.end(), 1);
  return p;
}

std::string to_string(const Permutation& p) {
  std::string s = "(";
  for (std::size_t k = 0; k < p.order.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(p.order[k]);
  }
  return s + ")";
}

LopInstance::LopInstance(int n, std::vector<std::int64_t> costs, std::string name)
    : n_(n), costs_(std::move(costs)), name_(std::move(name)) {
  if (n < 2) throw DomainError("LOP instance needs n >= 2, got " + std::to_string(n));
  if (costs_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw DomainError("cost matrix must have n*n entries");
  }
  for (int i = 0; i < n; ++i) costs_[static_cast<std::size_t>(i * n + i)] = 0;
}

std::int64_t LopInstance::pair_total() const {
  std::int64_t total = 0;
  for (int i = 1; i <= n_; ++i) {
    for (int j = i + 1; j <= n_; ++j) total += cost(i, j) + cost(j, i);
  }
  return total;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; };
  while (i < line.size()) {
    while (i < line.size() && is_ws(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_ws(line[j])) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

bool parse_i64(std::string_view tok, std::int64_t& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

LopInstance parse_instance(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::string name;
  int n = -1;
  std::vector<std::int64_t> costs;
  int rows_read = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.front().front() == '#') {
      constexpr std::string_view kNameTag = "# name:";
      std::string_view sv(line);
      const auto first = sv.find_first_not_of(" \t");
      sv.remove_prefix(first);
      if (sv.substr(0, kNameTag.size()) == kNameTag) {
        auto rest = sv.substr(kNameTag.size());
        const auto b = rest.find_first_not_of(" \t");
        const auto e = rest.find_last_not_of(" \t\r");
        name = b == std::string_view::npos ? std::string() : std::string(rest.substr(b, e - b + 1));
      }
      continue;
    }
    if (n < 0) {
      std::int64_t value = 0;
      if (tokens.size() != 1 || !parse_i64(tokens[0], value)) {
        throw ParseError(line_no, "malformed header: expected a single integer n");
      }
      if (value < 2) throw ParseError(line_no, "n >= 2 required, got " + std::to_string(value));
      if (value > 4096) throw ParseError(line_no, "n too large");
      n = static_cast<int>(value);
      costs.reserve(static_cast<std::size_t>(n * n));
      continue;
    }
    if (rows_read == n) throw ParseError(line_no, "unexpected content after the last matrix row");
    if (tokens.size() != static_cast<std::size_t>(n)) {
      throw ParseError(line_no, "row has " + std::to_string(tokens.size()) + " entries, expected " +
                                    std::to_string(n));
    }
    for (auto tok : tokens) {
      std::int64_t value = 0;
      if (!parse_i64(tok, value)) throw ParseError(line_no, "non-numeric entry '" + std::string(tok) + "'");
      costs.push_back(value);
    }
    ++rows_read;
  }
  if (n < 0) throw ParseError(line_no, "missing header line with n");
  if (rows_read != n) {
    throw ParseError(line_no, "expected " + std::to_string(n) + " rows, found " + std::to_string(rows_read));
  }
  return LopInstance(n, std::move(costs), std::move(name));
}

LopInstance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

void write_instance(std::ostream& out, const LopInstance& inst) {
  if (!inst.name().empty()) out << "# name: " << inst.name() << '\n';
  out << inst.n() << '\n';
  for (int i = 1; i <= inst.n(); ++i) {
    for (int j = 1; j <= inst.n(); ++j) {
      if (j > 1) out << ' ';
      out << (i == j ? 0 : inst.cost(i, j));
    }
    out << '\n';
  }
}

std::string serialize_instance(const LopInstance& inst) {
  std::ostringstream out;
  write_instance(out, inst);
  return out.str();
}

LopInstance random_instance(int n, std::uint64_t seed, std::int64_t lo, std::int64_t hi) {
  if (n < 2) throw DomainError("random_instance needs n >= 2");
  if (lo > hi) throw DomainError("random_instance needs a non-empty weight range");
  // Raw engine output plus rejection keeps the stream identical across
  // standard library implementations (uniform_int_distribution is not).
  std::mt19937_64 engine(seed);
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t{0} / span) * span;
  auto draw = [&]() -> std::int64_t {
    if (span == 0) return static_cast<std::int64_t>(engine());
    std::uint64_t r;
    do {
      r = engine();
    } while (r >= limit);
    return lo + static_cast<std::int64_t>(r % span);
  };
  std::vector<std::int64_t> costs(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) costs[static_cast<std::size_t>(i * n + j)] = draw();
    }
  }
  return LopInstance(n, std::move(costs), "rand-n" + std::to_string(n) + "-s" + std::to_string(seed));
}

std::int64_t permutation_value(const LopInstance& inst, const Permutation& p) {
  if (p.size() != static_cast<std::size_t>(inst.n()) || !p.valid()) {
    throw PreconditionError("permutation does not match the instance size");
  }
  std::int64_t value = 0;
  for (std::size_t a = 0; a < p.order.size(); ++a) {
    for (std::size_t b = a + 1; b < p.order.size(); ++b) value += inst.cost(p.order[a], p.order[b]);
  }
  return value;
}

}  // namespace lopcut
