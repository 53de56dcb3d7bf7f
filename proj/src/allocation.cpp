#include "cfl/allocation.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "cfl/errors.hpp"

namespace cfl {

namespace {

// Scales a dyadic to the integer grid 2^-W.
BigInt scaled(const Dyadic& d, unsigned w) { return d.numerator() << (w - d.exponent()); }

struct Gap {
  BigInt lo, hi;
};

BigInt lowbit_alignment(const BigInt& a, unsigned w) {
  if (a == 0) return BigInt(1) << w;
  BigInt bit = 1;
  BigInt v = a;
  while ((v & 1) == 0) {
    bit <<= 1;
    v >>= 1;
  }
  return bit;
}

BigInt floor_pow2(const BigInt& v) {
  BigInt p = 1;
  while (p * 2 <= v) p <<= 1;
  return p;
}

unsigned log2_exact(BigInt v) {
  unsigned l = 0;
  while (v > 1) {
    v >>= 1;
    ++l;
  }
  return l;
}

}  // namespace

void AllocationTable::allocate(std::vector<BitString>& side, Dyadic& side_mass,
                               const Dyadic& opposite_mass, const Dyadic& bound, unsigned len,
                               unsigned stage, char tag) {
  if (bound.exponent() > len)
    throw DomainError("bound " + bound.str() + " is not expressible at string length " +
                      std::to_string(len));
  if (bound <= side_mass) return;  // target already met
  // Mass constraint from the construction: the two demanded masses must fit.
  if (bound > opposite_mass.negate())
    throw InfeasibleBound("bounds contradict: demanded " + bound.str() + " for " + tag +
                          std::string(" against opposite mass ") + opposite_mass.str());

  unsigned w = std::max({len, max_length(), bound.exponent(), side_mass.exponent()});
  // Occupied cones of both sides as integer intervals at scale 2^-w.
  std::vector<Gap> covered;
  for (const auto& set : {&accept_, &reject_})
    for (const BitString& s : *set) {
      BigInt lo = BigInt(s.bits) << (w - s.len);
      covered.push_back({lo, lo + (BigInt(1) << (w - s.len))});
    }
  std::sort(covered.begin(), covered.end(), [](const Gap& a, const Gap& b) { return a.lo < b.lo; });
  std::vector<Gap> free_gaps;
  BigInt at = 0;
  for (const Gap& c : covered) {
    if (c.lo > at) free_gaps.push_back({at, c.lo});
    at = c.hi;
  }
  if (at < (BigInt(1) << w)) free_gaps.push_back({at, BigInt(1) << w});

  BigInt deficit = scaled(bound, w) - scaled(side_mass, w);
  std::vector<BitString> added;
  // Phase 1: leftmost aligned cones of the requested length.
  BigInt cone = BigInt(1) << (w - len);
  for (const Gap& g : free_gaps) {
    if (deficit < cone) break;
    BigInt p = ((g.lo + cone - 1) / cone) * cone;
    while (p + cone <= g.hi && deficit >= cone) {
      added.push_back({len, static_cast<std::uint64_t>(p >> (w - len))});
      deficit -= cone;
      p += cone;
    }
  }
  // Phase 2: exact top-up with longer strings (binary greedy, leftmost).
  if (deficit > 0) {
    // Re-derive the free region minus phase-1 takes.
    std::vector<Gap> taken = covered;
    for (const BitString& s : added) {
      BigInt lo = BigInt(s.bits) << (w - s.len);
      taken.push_back({lo, lo + (BigInt(1) << (w - s.len))});
    }
    std::sort(taken.begin(), taken.end(), [](const Gap& a, const Gap& b) { return a.lo < b.lo; });
    BigInt pos = 0;
    std::vector<Gap> gaps2;
    for (const Gap& c : taken) {
      if (c.lo > pos) gaps2.push_back({pos, c.lo});
      pos = c.hi;
    }
    if (pos < (BigInt(1) << w)) gaps2.push_back({pos, BigInt(1) << w});
    for (const Gap& g : gaps2) {
      BigInt a = g.lo;
      while (a < g.hi && deficit > 0) {
        BigInt size = std::min(lowbit_alignment(a, w), floor_pow2(std::min(deficit, g.hi - a)));
        unsigned l = w - log2_exact(size);
        added.push_back({l, static_cast<std::uint64_t>(a >> (w - l))});
        deficit -= size;
        a += size;
      }
      if (deficit == 0) break;
    }
  }
  if (deficit != 0)
    throw InfeasibleBound("free mass exhausted while allocating toward " + bound.str());

  side.insert(side.end(), added.begin(), added.end());
  std::sort(side.begin(), side.end());
  side_mass = bound;
  log_.push_back({stage, tag, std::move(added), side_mass});
}

void AllocationTable::allocate_accept(const Dyadic& bound, unsigned len, unsigned stage) {
  allocate(accept_, accept_mass_, reject_mass_, bound, len, stage, 'A');
}

void AllocationTable::allocate_reject(const Dyadic& bound, unsigned len, unsigned stage) {
  allocate(reject_, reject_mass_, accept_mass_, bound, len, stage, 'R');
}

std::optional<bool> AllocationTable::classify(const BitString& prefix) const {
  for (const BitString& s : accept_)
    if (s.is_prefix_of(prefix)) return true;
  for (const BitString& s : reject_)
    if (s.is_prefix_of(prefix)) return false;
  return std::nullopt;
}

unsigned AllocationTable::max_length() const {
  unsigned m = 0;
  for (const BitString& s : accept_) m = std::max(m, s.len);
  for (const BitString& s : reject_) m = std::max(m, s.len);
  return m;
}

std::string AllocationTable::render_log() const {
  std::string out;
  for (const LogEntry& e : log_) {
    out += std::to_string(e.stage) + " | ALLOC " + e.side + " ";
    if (e.added.empty()) out += "-";
    for (size_t i = 0; i < e.added.size(); ++i) {
      if (i > 0) out += ",";
      out += e.added[i].str();
    }
    out += " " + e.mass_after.str() + "\n";
  }
  return out;
}

std::string AllocationTable::to_json() const {
  nlohmann::json j;
  j["format"] = "cfl-table";
  j["version"] = 1;
  auto dump_log = [&] {
    nlohmann::json stages = nlohmann::json::array();
    for (const LogEntry& e : log_) {
      nlohmann::json names = nlohmann::json::array();
      for (const BitString& s : e.added) names.push_back(s.str());
      stages.push_back({{"stage", e.stage},
                        {"side", std::string(1, e.side)},
                        {"added", names},
                        {"mass", e.mass_after.str()}});
    }
    return stages;
  };
  nlohmann::json acc = nlohmann::json::array(), rej = nlohmann::json::array();
  for (const BitString& s : accept_) acc.push_back(s.str());
  for (const BitString& s : reject_) rej.push_back(s.str());
  j["accept"] = acc;
  j["reject"] = rej;
  j["log"] = dump_log();
  return j.dump(2);
}

AllocationTable AllocationTable::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format", "") != "cfl-table") throw DomainError("not a cfl-table file");
  AllocationTable t;
  for (const auto& s : j.at("accept")) t.accept_.push_back(BitString::parse(s.get<std::string>()));
  for (const auto& s : j.at("reject")) t.reject_.push_back(BitString::parse(s.get<std::string>()));
  t.accept_mass_ = mass(t.accept_);
  t.reject_mass_ = mass(t.reject_);
  for (const BitString& a : t.accept_)
    for (const BitString& r : t.reject_)
      if (a.comparable(r)) throw DomainError("accept/reject cones overlap");
  return t;
}

ApproximantPair approximants(const AllocationTable& table, std::uint64_t stage) {
  Dyadic f, rejected;
  const auto& acc = table.accept_set();
  const auto& rej = table.reject_set();
  for (std::uint64_t i = 0; i < stage; ++i) {
    BitString s = nth_string(i);
    if (std::find(acc.begin(), acc.end(), s) != acc.end()) f = f.add(s.measure());
    if (std::find(rej.begin(), rej.end(), s) != rej.end()) rejected = rejected.add(s.measure());
  }
  return {f, rejected.negate()};
}

}  // namespace cfl
