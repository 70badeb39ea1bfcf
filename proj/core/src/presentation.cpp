#include "gmprof/presentation.hpp"

#include "gmprof/error.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace gmprof {

// ---------------------------------------------------------------------------
// Presentation construction

namespace {

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (Syllable& s : out) s.exponent = -s.exponent;
  return out;
}

Power power(const Word& base, const Integer& exponent) { return {base, exponent}; }
Power gen_power(std::size_t g, const Integer& exponent) { return {{{g, 1}}, exponent}; }

struct VertexWords {
  Word fibre;
  std::map<EdgeEnd, Word> boundary;
};

class PresentationBuilder {
 public:
  explicit PresentationBuilder(const GraphManifold& m) : m_(m) {}

  Presentation build() {
    for (const auto& [v, piece] : m_.vertices) {
      if (is_minor(piece)) add_minor(v);
      else add_major(v, std::get<MajorPiece>(piece).base);
    }
    const std::set<std::size_t> tree = spanning_tree();
    for (std::size_t i = 0; i < m_.edges.size(); ++i) add_edge(i, tree.count(i) > 0);
    return std::move(p_);
  }

 private:
  std::size_t gen(std::string name) {
    p_.generators.push_back(std::move(name));
    return p_.generators.size() - 1;
  }

  static std::string end_name(const GraphManifold& m, EdgeEnd end) {
    return "b@" + m.edges[end.edge].id + (end.side == Side::To ? "~" : "");
  }

  void add_major(const std::string& v, const BaseOrbifold& base) {
    const std::vector<EdgeEnd> ends = incident_ends(m_, v);
    std::vector<std::size_t> cones, boundary, us, vs;
    for (std::size_t i = 0; i < base.cones.size(); ++i)
      cones.push_back(gen("a" + std::to_string(i + 1) + "@" + v));
    for (std::size_t k = 1; k < ends.size(); ++k) boundary.push_back(gen(end_name(m_, ends[k])));
    for (int j = 1; j <= base.genus; ++j) {
      us.push_back(gen("u" + std::to_string(j) + "@" + v));
      if (base.orientable) vs.push_back(gen("v" + std::to_string(j) + "@" + v));
    }
    const std::size_t h = gen("h@" + v);

    for (std::size_t i = 0; i < cones.size(); ++i)
      p_.relators.push_back({gen_power(cones[i], base.cones[i].p), gen_power(h, base.cones[i].q)});

    auto commutator = [&](std::size_t g) {
      p_.relators.push_back({gen_power(h, 1), gen_power(g, 1), gen_power(h, -1), gen_power(g, -1)});
    };
    for (std::size_t g : cones) commutator(g);
    for (std::size_t g : boundary) commutator(g);
    if (base.orientable) {
      for (std::size_t j = 0; j < us.size(); ++j) {
        commutator(us[j]);
        commutator(vs[j]);
      }
    } else {
      // u h u^-1 = h^-1
      for (std::size_t u : us)
        p_.relators.push_back({gen_power(u, 1), gen_power(h, 1), gen_power(u, -1), gen_power(h, 1)});
    }

    // e_0 = (a_1..a_r e_1..e_s [u_1,v_1]..[u_g,v_g])^-1, or u_j^2 for a
    // non-orientable base.
    Word product;
    for (std::size_t g : cones) product.push_back({g, 1});
    for (std::size_t g : boundary) product.push_back({g, 1});
    for (std::size_t j = 0; j < us.size(); ++j) {
      if (base.orientable) {
        product.insert(product.end(), {{us[j], 1}, {vs[j], 1}, {us[j], -1}, {vs[j], -1}});
      } else {
        product.push_back({us[j], 2});
      }
    }
    VertexWords& words = words_[v];
    words.fibre = {{h, 1}};
    if (!ends.empty()) words.boundary[ends[0]] = inverse(product);
    for (std::size_t k = 1; k < ends.size(); ++k) words.boundary[ends[k]] = {{boundary[k - 1], 1}};
  }

  void add_minor(const std::string& v) {
    const std::size_t x = gen("xhat@" + v);
    const std::size_t y = gen("yhat@" + v);
    // x y x^-1 = y^-1
    p_.relators.push_back({gen_power(x, 1), gen_power(y, 1), gen_power(x, -1), gen_power(y, 1)});
    VertexWords& words = words_[v];
    words.fibre = {{x, 2}};
    for (EdgeEnd end : incident_ends(m_, v)) words.boundary[end] = {{y, 1}};
  }

  std::set<std::size_t> spanning_tree() const {
    std::set<std::size_t> tree;
    if (m_.vertices.empty()) return tree;
    std::set<std::string> seen{m_.vertices.begin()->first};
    std::vector<std::string> queue{m_.vertices.begin()->first};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (EdgeEnd end : incident_ends(m_, queue[head])) {
        const std::string& w = far_vertex(m_, end);
        if (seen.insert(w).second) {
          tree.insert(end.edge);
          queue.push_back(w);
        }
      }
    }
    return tree;
  }

  void add_edge(std::size_t i, bool in_tree) {
    const Edge& e = m_.edges[i];
    const GluingMatrix& a = e.matrix;
    const VertexWords& wx = words_.at(e.from);
    const VertexWords& wy = words_.at(e.to);
    const Word& fibre_x = wx.fibre;
    const Word& section_x = wx.boundary.at({i, Side::From});
    const Word& fibre_y = wy.fibre;
    const Word& section_y = wy.boundary.at({i, Side::To});
    if (in_tree) {
      // h_x = h_y^alpha s_y^gamma,  s_x = h_y^beta s_y^delta
      p_.relators.push_back({power(fibre_x, -1), power(fibre_y, a.alpha), power(section_y, a.gamma)});
      p_.relators.push_back({power(section_x, -1), power(fibre_y, a.beta), power(section_y, a.delta)});
      return;
    }
    const std::size_t t = gen("t@" + e.id);
    p_.relators.push_back({gen_power(t, -1), power(fibre_x, 1), gen_power(t, 1),
                           power(section_y, -a.gamma), power(fibre_y, -a.alpha)});
    p_.relators.push_back({gen_power(t, -1), power(section_x, 1), gen_power(t, 1),
                           power(section_y, -a.delta), power(fibre_y, -a.beta)});
  }

  const GraphManifold& m_;
  Presentation p_;
  std::map<std::string, VertexWords> words_;
};

}  // namespace

Presentation build_presentation(const GraphManifold& m) {
  return PresentationBuilder(m).build();
}

// ---------------------------------------------------------------------------
// Text format

namespace {

void write_syllables(std::ostream& os, const Presentation& p, const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) os << ' ';
    os << p.generators.at(w[i].generator) << '^' << w[i].exponent;
  }
}

}  // namespace

std::string to_text(const Presentation& p) {
  std::ostringstream os;
  os << "generators:";
  for (const std::string& g : p.generators) os << ' ' << g;
  os << '\n';
  for (const Relator& r : p.relators) {
    if (r.empty()) os << '1';
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) os << ' ';
      const Power& pw = r[i];
      if (pw.base.size() == 1 && pw.base[0].exponent == 1) {
        os << p.generators.at(pw.base[0].generator) << '^' << pw.exponent;
      } else {
        os << '(';
        write_syllables(os, p, pw.base);
        os << ")^" << pw.exponent;
      }
    }
    os << '\n';
  }
  return os.str();
}

namespace {

class RelatorParser {
 public:
  RelatorParser(const std::string& line, const std::map<std::string, std::size_t>& index,
                std::size_t line_no)
      : s_(line), index_(index), line_no_(line_no) {}

  Relator parse() {
    Relator r;
    skip_space();
    if (s_ == "1") return r;
    while (pos_ < s_.size()) {
      if (s_[pos_] == '(') {
        ++pos_;
        Word base;
        skip_space();
        while (pos_ < s_.size() && s_[pos_] != ')') {
          base.push_back(syllable());
          skip_space();
        }
        expect(')');
        expect('^');
        r.push_back({std::move(base), integer()});
      } else {
        Syllable syl = syllable();
        r.push_back({{{syl.generator, 1}}, syl.exponent});
      }
      skip_space();
    }
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::Parse, "presentation line " + std::to_string(line_no_) + ", column " +
                                      std::to_string(pos_ + 1) + ": " + what);
  }
  void skip_space() {
    while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
  }
  void expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  Syllable syllable() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != '^' && s_[pos_] != ' ' && s_[pos_] != '(' &&
           s_[pos_] != ')')
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    auto it = index_.find(name);
    if (it == index_.end()) fail("unknown generator '" + name + "'");
    expect('^');
    return {it->second, integer()};
  }
  Integer integer() {
    std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string digits = s_.substr(start, pos_ - start);
    if (digits.empty() || digits == "-") fail("expected integer");
    return Integer(digits);
  }

  const std::string& s_;
  const std::map<std::string, std::size_t>& index_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

}  // namespace

Presentation parse_presentation(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  Presentation p;
  if (!std::getline(is, line) || line.rfind("generators:", 0) != 0)
    throw Error(ErrorCode::Parse, "presentation line 1: expected 'generators:'");
  std::istringstream names(line.substr(11));
  std::map<std::string, std::size_t> index;
  for (std::string name; names >> name;) {
    if (!index.emplace(name, p.generators.size()).second)
      throw Error(ErrorCode::Parse, "presentation line 1: duplicate generator '" + name + "'");
    p.generators.push_back(name);
  }
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    p.relators.push_back(RelatorParser(line, index, line_no).parse());
  }
  return p;
}

// ---------------------------------------------------------------------------
// Finite permutation groups

namespace {

class FiniteGroup {
 public:
  explicit FiniteGroup(const FiniteGroupSpec& spec) {
    for (const Permutation& g : spec.generators) check(spec, g);
    Permutation id(spec.degree);
    std::iota(id.begin(), id.end(), 0u);
    add(id);
    for (std::size_t head = 0; head < elements_.size(); ++head)
      for (const Permutation& g : spec.generators) add(compose(elements_[head], g));

    const std::size_t n = elements_.size();
    mul_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        mul_[a * n + b] = static_cast<std::uint32_t>(index_.at(compose(elements_[a], elements_[b])));

    exponent_ = 1;
    for (std::size_t a = 0; a < n; ++a) {
      std::size_t x = a, order = 1;
      while (x != 0) {
        x = mul_[x * n + a];
        ++order;
      }
      exponent_ = std::lcm(exponent_, order);
    }
    pow_.assign(n * exponent_, 0);
    for (std::size_t a = 0; a < n; ++a) {
      std::uint32_t x = 0;
      for (std::size_t k = 0; k < exponent_; ++k) {
        pow_[a * exponent_ + k] = x;
        x = mul_[x * n + a];
      }
    }
  }

  std::size_t size() const { return elements_.size(); }
  std::size_t exponent() const { return exponent_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * size() + b]; }
  // k already reduced into [0, exponent)
  std::uint32_t pow(std::uint32_t a, std::size_t k) const { return pow_[a * exponent_ + k]; }

 private:
  static void check(const FiniteGroupSpec& spec, const Permutation& g) {
    if (g.size() != spec.degree)
      throw Error(ErrorCode::Precondition, "group " + spec.name + ": generator of wrong degree");
    std::vector<bool> hit(spec.degree, false);
    for (std::uint32_t x : g) {
      if (x >= spec.degree || hit[x])
        throw Error(ErrorCode::Precondition, "group " + spec.name + ": generator is not a bijection");
      hit[x] = true;
    }
  }
  // (a b)(i) = a(b(i))
  static Permutation compose(const Permutation& a, const Permutation& b) {
    Permutation out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
    return out;
  }
  void add(const Permutation& p) {
    if (index_.emplace(p, elements_.size()).second) elements_.push_back(p);
  }

  std::vector<Permutation> elements_;  // elements_[0] is the identity
  std::map<Permutation, std::size_t> index_;
  std::vector<std::uint32_t> mul_;
  std::vector<std::uint32_t> pow_;
  std::size_t exponent_ = 1;
};

struct CompiledPower {
  std::vector<std::pair<std::size_t, std::size_t>> base;  // (generator, exponent mod e)
  std::size_t exponent = 0;
};

struct CompiledRelator {
  std::vector<CompiledPower> powers;
};

class HomCounter {
 public:
  HomCounter(const Presentation& p, const FiniteGroup& g, const CountBudget& budget)
      : p_(p), g_(g), budget_(budget) {
    const Integer e = g.exponent();
    std::vector<std::set<std::size_t>> uses(p.relators.size());
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
      CompiledRelator c;
      for (const Power& pw : p.relators[r]) {
        CompiledPower cp;
        for (const Syllable& s : pw.base) {
          if (s.generator >= p.generators.size())
            throw Error(ErrorCode::Precondition, "relator references unknown generator");
          cp.base.emplace_back(s.generator, floor_mod(s.exponent, e).convert_to<std::size_t>());
          uses[r].insert(s.generator);
        }
        cp.exponent = floor_mod(pw.exponent, e).convert_to<std::size_t>();
        c.powers.push_back(std::move(cp));
      }
      relators_.push_back(std::move(c));
    }
    order_generators(uses);
  }

  std::uint64_t count() {
    image_.assign(p_.generators.size(), 0);
    return search(0);
  }

 private:
  // Greedy order: next generator completes the most relators, then appears in
  // the most relators.
  void order_generators(const std::vector<std::set<std::size_t>>& uses) {
    const std::size_t n = p_.generators.size();
    std::vector<bool> placed(n, false);
    std::vector<std::size_t> remaining(uses.size());
    for (std::size_t r = 0; r < uses.size(); ++r) remaining[r] = uses[r].size();
    check_at_.assign(n + 1, {});
    for (std::size_t r = 0; r < uses.size(); ++r)
      if (uses[r].empty()) check_at_[0].push_back(r);
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t best = n;
      std::pair<std::size_t, std::size_t> best_score{0, 0};
      for (std::size_t g = 0; g < n; ++g) {
        if (placed[g]) continue;
        std::pair<std::size_t, std::size_t> score{0, 0};
        for (std::size_t r = 0; r < uses.size(); ++r) {
          if (!uses[r].count(g)) continue;
          ++score.second;
          if (remaining[r] == 1) ++score.first;
        }
        if (best == n || score > best_score) {
          best = g;
          best_score = score;
        }
      }
      placed[best] = true;
      order_.push_back(best);
      for (std::size_t r = 0; r < uses.size(); ++r) {
        if (!uses[r].count(best)) continue;
        if (--remaining[r] == 0) check_at_[step + 1].push_back(r);
      }
    }
  }

  bool holds(const CompiledRelator& r) const {
    std::uint32_t acc = 0;
    for (const CompiledPower& pw : r.powers) {
      std::uint32_t b = 0;
      for (const auto& [gen, k] : pw.base) b = g_.mul(b, g_.pow(image_[gen], k));
      acc = g_.mul(acc, g_.pow(b, pw.exponent));
    }
    return acc == 0;
  }

  std::uint64_t search(std::size_t depth) {
    for (std::size_t r : check_at_[depth])
      if (!holds(relators_[r])) return 0;
    if (depth == order_.size()) return 1;
    std::uint64_t total = 0;
    const std::size_t gen = order_[depth];
    for (std::uint32_t x = 0; x < g_.size(); ++x) {
      if (++nodes_ > budget_.max_nodes)
        throw Error(ErrorCode::Budget, "count_homs: node budget of " +
                                           std::to_string(budget_.max_nodes) + " exceeded");
      image_[gen] = x;
      total += search(depth + 1);
    }
    return total;
  }

  const Presentation& p_;
  const FiniteGroup& g_;
  CountBudget budget_;
  std::vector<CompiledRelator> relators_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<std::size_t>> check_at_;
  std::vector<std::uint32_t> image_;
  std::uint64_t nodes_ = 0;
};

Permutation cycle(std::size_t degree, std::vector<std::uint32_t> points) {
  Permutation p(degree);
  std::iota(p.begin(), p.end(), 0u);
  for (std::size_t i = 0; i < points.size(); ++i) p[points[i]] = points[(i + 1) % points.size()];
  return p;
}

}  // namespace

std::size_t group_order(const FiniteGroupSpec& spec) { return FiniteGroup(spec).size(); }

FiniteGroupSpec symmetric_group(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::Precondition, "symmetric_group: degree must be >= 1");
  FiniteGroupSpec s{"S" + std::to_string(n), n, {}};
  if (n >= 2) {
    s.generators.push_back(cycle(n, {0, 1}));
    std::vector<std::uint32_t> all(n);
    std::iota(all.begin(), all.end(), 0u);
    if (n >= 3) s.generators.push_back(cycle(n, all));
  }
  return s;
}

std::vector<FiniteGroupSpec> builtin_catalogue() {
  return {
      {"C2", 2, {cycle(2, {0, 1})}},
      {"C3", 3, {cycle(3, {0, 1, 2})}},
      {"C4", 4, {cycle(4, {0, 1, 2, 3})}},
      {"C5", 5, {cycle(5, {0, 1, 2, 3, 4})}},
      {"S3", 3, {cycle(3, {0, 1}), cycle(3, {0, 1, 2})}},
      {"D8", 4, {cycle(4, {0, 1, 2, 3}), cycle(4, {1, 3})}},
      {"A4", 4, {cycle(4, {0, 1, 2}), Permutation{1, 0, 3, 2}}},
      // x -> x + 1 and x -> 2x on Z/5
      {"F20", 5, {cycle(5, {0, 1, 2, 3, 4}), Permutation{0, 2, 4, 1, 3}}},
  };
}

FiniteGroupSpec group_by_name(const std::string& name) {
  for (FiniteGroupSpec& g : builtin_catalogue())
    if (g.name == name) return g;
  if (name.size() >= 2 && name[0] == 'S' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    std::size_t n = std::stoul(name.substr(1));
    if (n >= 1 && n <= 7) return symmetric_group(n);
  }
  throw Error(ErrorCode::Precondition, "unknown group '" + name + "'");
}

std::uint64_t count_homs(const Presentation& p, const FiniteGroupSpec& target,
                         const CountBudget& budget) {
  FiniteGroup g(target);
  return HomCounter(p, g, budget).count();
}

Integer count_index_subgroups(const Presentation& p, std::size_t n, const CountBudget& budget) {
  if (n < 1) throw Error(ErrorCode::Precondition, "count_index_subgroups: index must be >= 1");
  // Hall: a_n = h_n/(n-1)! - sum_{k<n} h_{n-k} a_k / (n-k)!, h_k = |Hom(G, S_k)|.
  std::vector<Rational> homs(n + 1, 0), subgroups(n + 1, 0);
  std::vector<Integer> factorial(n + 1, 1);
  for (std::size_t k = 1; k <= n; ++k) factorial[k] = factorial[k - 1] * k;
  homs[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) homs[k] = Integer(count_homs(p, symmetric_group(k), budget));
  for (std::size_t k = 1; k <= n; ++k) {
    Rational a = homs[k] / Rational(factorial[k - 1]);
    for (std::size_t j = 1; j < k; ++j) a -= homs[k - j] * subgroups[j] / Rational(factorial[k - j]);
    if (denominator(a) != 1)
      throw Error(ErrorCode::Internal, "count_index_subgroups: non-integral count");
    subgroups[k] = a;
  }
  return numerator(subgroups[n]);
}

CensusVector hom_census(const GraphManifold& m, const std::vector<FiniteGroupSpec>& catalogue,
                        const CountBudget& budget) {
  const Presentation p = build_presentation(m);
  CensusVector out;
  for (const FiniteGroupSpec& g : catalogue) {
    try {
      out.entries.emplace_back(g.name, count_homs(p, g, budget));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Budget) throw;
      throw Error(ErrorCode::Budget, "census entry " + g.name + ": " + e.what());
    }
  }
  return out;
}

}  // namespace gmprof
