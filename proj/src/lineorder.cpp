#include "tsite/lineorder.hpp"

#include <algorithm>
#include <stdexcept>

namespace tsite {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\n\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\n\r");
  return s.substr(a, b - a + 1);
}

std::string qstr(const Rational& q) { return q.get_str(); }

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string s = trim(raw);
  if (s.empty()) throw std::invalid_argument("empty rational");
  try {
    size_t slash = s.find('/');
    if (slash != std::string::npos) {
      mpz_class n(trim(s.substr(0, slash)), 10);
      mpz_class d(trim(s.substr(slash + 1)), 10);
      if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
      Rational q(n, d);
      q.canonicalize();
      return q;
    }
    size_t dot = s.find('.');
    if (dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      mpz_class d = 1;
      for (size_t i = dot + 1; i < s.size(); ++i) d *= 10;
      Rational q(mpz_class(digits, 10), d);
      q.canonicalize();
      return q;
    }
    return Rational(mpz_class(s, 10));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
}

std::string Endpoint::str() const {
  if (inf < 0) return "-inf";
  if (inf > 0) return "+inf";
  return qstr(q);
}

Endpoint Endpoint::parse(const std::string& raw) {
  std::string s = trim(raw);
  if (s == "-inf") return neg_inf();
  if (s == "+inf" || s == "inf") return pos_inf();
  return at(parse_rational(s));
}

bool operator<(const Endpoint& a, const Endpoint& b) {
  if (a.inf != b.inf) return a.inf < b.inf;
  if (a.inf != 0) return false;
  return a.q < b.q;
}

bool operator==(const Endpoint& a, const Endpoint& b) {
  if (a.inf != b.inf) return false;
  return a.inf != 0 || a.q == b.q;
}

namespace {

bool piece_contains(const Piece& p, const Rational& q) {
  if (p.point) return p.lo.q == q;
  Endpoint e = Endpoint::at(q);
  return p.lo < e && e < p.hi;
}

bool same_piece(const Piece& a, const Piece& b) {
  return a.point == b.point && a.lo == b.lo && a.hi == b.hi;
}

// Distinct sorted finite endpoints of all pieces of both sets.
std::vector<Rational> joint_points(const SemilinearSet& a, const SemilinearSet& b) {
  return merge_points(a.endpoints(), b.endpoints());
}

std::vector<char> atom_mask(const CellComplex& atoms, const SemilinearSet& s) {
  std::vector<char> in(atoms.size());
  for (int c = 0; c < atoms.size(); ++c) in[c] = s.contains(atoms.sample(c));
  return in;
}

}  // namespace

SemilinearSet from_atoms(const std::vector<Rational>& pts, const std::vector<char>& in) {
  CellComplex atoms = cells(pts);
  SemilinearSet out;
  std::vector<Piece>& st = out.pieces_;
  for (int c = 0; c < atoms.size(); ++c) {
    if (!in[c]) continue;
    Piece p;
    if (CellComplex::is_vertex(c)) {
      p.point = true;
      p.lo = p.hi = Endpoint::at(atoms.vertex_value(c));
      st.push_back(p);
      continue;
    }
    int i = c / 2;
    int m = atoms.num_vertices();
    p.lo = i == 0 ? Endpoint::neg_inf() : Endpoint::at(pts[i - 1]);
    p.hi = i == m ? Endpoint::pos_inf() : Endpoint::at(pts[i]);
    st.push_back(p);
    size_t n = st.size();
    if (n >= 3 && !st[n - 3].point && st[n - 2].point && st[n - 3].hi == st[n - 2].lo &&
        st[n - 2].hi == st[n - 1].lo) {
      Piece merged{false, st[n - 3].lo, st[n - 1].hi};
      st.resize(n - 3);
      st.push_back(merged);
    }
  }
  return out;
}

SemilinearSet SemilinearSet::interval(const Endpoint& a, const Endpoint& b) {
  SemilinearSet s;
  if (a < b && !(a.inf > 0) && !(b.inf < 0)) s.pieces_.push_back({false, a, b});
  return s;
}

SemilinearSet SemilinearSet::interval(const Rational& a, const Rational& b) {
  return interval(Endpoint::at(a), Endpoint::at(b));
}

SemilinearSet SemilinearSet::closed_interval(const Rational& a, const Rational& b) {
  if (b < a) return {};
  return unite(unite(point(a), point(b)), interval(a, b));
}

SemilinearSet SemilinearSet::point(const Rational& q) {
  SemilinearSet s;
  s.pieces_.push_back({true, Endpoint::at(q), Endpoint::at(q)});
  return s;
}

SemilinearSet SemilinearSet::line() { return interval(Endpoint::neg_inf(), Endpoint::pos_inf()); }

SemilinearSet SemilinearSet::from_pieces(const std::vector<Piece>& pieces) {
  SemilinearSet out;
  for (const Piece& p : pieces) {
    SemilinearSet one = p.point ? point(p.lo.q) : interval(p.lo, p.hi);
    out = unite(out, one);
  }
  return out;
}

SemilinearSet SemilinearSet::parse(const std::string& raw) {
  std::string s = trim(raw);
  SemilinearSet out;
  if (s.empty() || s == "empty") return out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i >= s.size()) break;
    char open = s[i];
    if (open != '(' && open != '[' && open != '{')
      throw std::invalid_argument("expected '(', '[' or '{' in set '" + s + "'");
    size_t j = s.find_first_of(")]}", i + 1);
    if (j == std::string::npos) throw std::invalid_argument("unterminated piece in set '" + s + "'");
    char close = s[j];
    std::string body = s.substr(i + 1, j - i - 1);
    if (open == '{') {
      if (close != '}') throw std::invalid_argument("mismatched braces in set '" + s + "'");
      out = unite(out, point(parse_rational(body)));
    } else {
      size_t comma = body.find(',');
      if (comma == std::string::npos || close == '}')
        throw std::invalid_argument("malformed interval in set '" + s + "'");
      Endpoint a = Endpoint::parse(body.substr(0, comma));
      Endpoint b = Endpoint::parse(body.substr(comma + 1));
      if (b < a) throw std::invalid_argument("reversed interval in set '" + s + "'");
      SemilinearSet piece = interval(a, b);
      if (open == '[') {
        if (!a.finite()) throw std::invalid_argument("closed infinite endpoint in '" + s + "'");
        piece = unite(piece, point(a.q));
      }
      if (close == ']') {
        if (!b.finite()) throw std::invalid_argument("closed infinite endpoint in '" + s + "'");
        piece = unite(piece, point(b.q));
      }
      out = unite(out, piece);
    }
    i = j + 1;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i < s.size()) {
      if (s[i] != '+' && s[i] != 'U') throw std::invalid_argument("expected '+' between pieces in '" + s + "'");
      ++i;
    }
  }
  return out;
}

bool SemilinearSet::contains(const Rational& q) const {
  for (const Piece& p : pieces_)
    if (piece_contains(p, q)) return true;
  return false;
}

bool SemilinearSet::is_open() const {
  for (const Piece& p : pieces_)
    if (p.point) return false;
  return true;
}

bool SemilinearSet::is_bounded() const {
  if (pieces_.empty()) return true;
  return pieces_.front().lo.finite() && pieces_.back().hi.finite();
}

std::vector<Rational> SemilinearSet::endpoints() const {
  std::vector<Rational> out;
  for (const Piece& p : pieces_) {
    if (p.lo.finite()) out.push_back(p.lo.q);
    if (p.hi.finite()) out.push_back(p.hi.q);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string SemilinearSet::str() const {
  if (pieces_.empty()) return "empty";
  std::string out;
  for (const Piece& p : pieces_) {
    if (!out.empty()) out += "+";
    if (p.point)
      out += "{" + qstr(p.lo.q) + "}";
    else
      out += "(" + p.lo.str() + "," + p.hi.str() + ")";
  }
  return out;
}

bool operator==(const SemilinearSet& a, const SemilinearSet& b) {
  if (a.pieces_.size() != b.pieces_.size()) return false;
  for (size_t i = 0; i < a.pieces_.size(); ++i)
    if (!same_piece(a.pieces_[i], b.pieces_[i])) return false;
  return true;
}

SemilinearSet bool_ops(const SemilinearSet& a, const SemilinearSet& b, BoolOp op) {
  std::vector<Rational> pts = joint_points(a, b);
  CellComplex atoms = cells(pts);
  std::vector<char> ma = atom_mask(atoms, a);
  std::vector<char> mb = atom_mask(atoms, b);
  std::vector<char> out(ma.size());
  for (size_t i = 0; i < ma.size(); ++i) {
    switch (op) {
      case BoolOp::Union: out[i] = ma[i] || mb[i]; break;
      case BoolOp::Intersect: out[i] = ma[i] && mb[i]; break;
      case BoolOp::Diff: out[i] = ma[i] && !mb[i]; break;
      case BoolOp::Complement: out[i] = !ma[i]; break;
    }
  }
  return from_atoms(pts, out);
}

SemilinearSet unite(const SemilinearSet& a, const SemilinearSet& b) { return bool_ops(a, b, BoolOp::Union); }
SemilinearSet intersect(const SemilinearSet& a, const SemilinearSet& b) {
  return bool_ops(a, b, BoolOp::Intersect);
}
SemilinearSet diff(const SemilinearSet& a, const SemilinearSet& b) { return bool_ops(a, b, BoolOp::Diff); }
SemilinearSet complement(const SemilinearSet& a) { return bool_ops(a, SemilinearSet(), BoolOp::Complement); }

bool subset(const SemilinearSet& a, const SemilinearSet& b) { return diff(a, b).empty(); }

SemilinearSet closure(const SemilinearSet& a) {
  std::vector<Rational> pts = a.endpoints();
  CellComplex atoms = cells(pts);
  std::vector<char> in = atom_mask(atoms, a);
  std::vector<char> out = in;
  for (int c = 1; c < atoms.size(); c += 2) out[c] = in[c] || in[c - 1] || in[c + 1];
  return from_atoms(pts, out);
}

SemilinearSet interior(const SemilinearSet& a) {
  std::vector<Rational> pts = a.endpoints();
  CellComplex atoms = cells(pts);
  std::vector<char> in = atom_mask(atoms, a);
  std::vector<char> out = in;
  for (int c = 1; c < atoms.size(); c += 2) out[c] = in[c] && in[c - 1] && in[c + 1];
  return from_atoms(pts, out);
}

SemilinearSet translate(const SemilinearSet& a, const Rational& t) {
  std::vector<Piece> ps = a.pieces();
  for (Piece& p : ps) {
    if (p.lo.finite()) p.lo.q += t;
    if (p.hi.finite()) p.hi.q += t;
  }
  return SemilinearSet::from_pieces(ps);
}

std::vector<SemilinearSet> components(const SemilinearSet& a) {
  std::vector<Rational> pts = a.endpoints();
  CellComplex atoms = cells(pts);
  std::vector<char> in = atom_mask(atoms, a);
  std::vector<SemilinearSet> out;
  int c = 0;
  while (c < atoms.size()) {
    if (!in[c]) {
      ++c;
      continue;
    }
    std::vector<char> run(in.size(), 0);
    while (c < atoms.size() && in[c]) run[c++] = 1;
    out.push_back(from_atoms(pts, run));
  }
  return out;
}

int connected_components(const SemilinearSet& a) { return static_cast<int>(components(a).size()); }

bool is_T_open(const SemilinearSet& u) { return u.is_open() && u.is_bounded(); }

TlocOpen TlocOpen::finite(const SemilinearSet& s) {
  TlocOpen u;
  u.kind = Kind::Finite;
  u.set = s;
  return u;
}

TlocOpen TlocOpen::periodic(const SemilinearSet& pattern, const Rational& period) {
  TlocOpen u;
  u.kind = Kind::Periodic;
  u.pattern = pattern;
  u.period = period;
  is_Tloc_open(u);
  return u;
}

SemilinearSet TlocOpen::window(const Rational& lo, const Rational& hi) const {
  SemilinearSet w = SemilinearSet::interval(lo, hi);
  if (kind == Kind::Finite) return intersect(set, w);
  if (pattern.empty() || !(lo < hi)) return {};
  std::vector<Rational> ep = pattern.endpoints();
  Rational pmin = ep.front();
  Rational pmax = ep.back();
  mpz_class kmin, kmax;
  Rational a = (lo - pmax) / period;
  Rational b = (hi - pmin) / period;
  mpz_fdiv_q(kmin.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  mpz_cdiv_q(kmax.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
  SemilinearSet out;
  for (mpz_class k = kmin; k <= kmax; ++k) out = unite(out, translate(pattern, Rational(k) * period));
  return intersect(out, w);
}

std::string TlocOpen::str() const {
  if (kind == Kind::Finite) return set.str();
  return pattern.str() + "@" + qstr(period);
}

bool is_Tloc_open(const TlocOpen& u) {
  if (u.kind == TlocOpen::Kind::Finite) return u.set.is_open();
  if (!(u.period > 0)) throw std::invalid_argument("periodic open needs a positive period");
  if (!u.pattern.is_open()) throw std::invalid_argument("periodic pattern must be open");
  if (!u.pattern.is_bounded()) throw std::invalid_argument("periodic pattern must be bounded");
  return true;
}

bool rwqc(const SemilinearSet& u, const SemilinearSet& v) {
  if (u.empty()) return true;
  return u.is_bounded() && subset(closure(u), v);
}

std::optional<WitnessCovering> rwqc_witness(const SemilinearSet& u, const SemilinearSet& v) {
  if (rwqc(u, v)) return std::nullopt;
  if (!subset(u, v)) return WitnessCovering{"{V}", [v](int) { return v; }};
  if (!u.is_bounded()) {
    return WitnessCovering{"V∩(-n,n)", [v](int n) { return intersect(v, SemilinearSet::interval(-n, n)); }};
  }
  SemilinearSet bad = diff(closure(u), v);
  const Piece& first = bad.pieces().front();
  Rational p = first.point ? first.lo.q : Rational((first.lo.q + first.hi.q) / 2);
  return WitnessCovering{"V\\[" + qstr(p) + "-1/n," + qstr(p) + "+1/n]", [v, p](int n) {
                           Rational r = frac(1, n);
                           return diff(v, SemilinearSet::closed_interval(p - r, p + r));
                         }};
}

namespace {

std::vector<Rational> samples_of(const SemilinearSet& v) {
  std::vector<Rational> out;
  for (const Piece& p : v.pieces()) {
    if (p.point) {
      out.push_back(p.lo.q);
      continue;
    }
    if (p.lo.finite() && p.hi.finite()) {
      Rational w = p.hi.q - p.lo.q;
      for (int j = 1; j <= 3; ++j) {
        Rational f = frac(1, 1 << j);
        out.push_back(p.lo.q + w * f);
        out.push_back(p.hi.q - w * f);
      }
    } else if (p.lo.finite()) {
      for (int j = 1; j <= 3; ++j) out.push_back(p.lo.q + j);
    } else if (p.hi.finite()) {
      for (int j = 1; j <= 3; ++j) out.push_back(p.hi.q - j);
    } else {
      for (int j = -3; j <= 3; ++j) out.push_back(Rational(j));
    }
  }
  return out;
}

// Points of V at distance more than 1/n from its boundary, inside (-n,n).
SemilinearSet shrink(const SemilinearSet& v, int n) {
  SemilinearSet out;
  Rational r = frac(1, n);
  for (const Piece& p : v.pieces()) {
    if (p.point) continue;
    Rational a = p.lo.finite() ? Rational(p.lo.q + r) : Rational(-n);
    Rational b = p.hi.finite() ? Rational(p.hi.q - r) : Rational(n);
    out = unite(out, SemilinearSet::interval(a, b));
  }
  return intersect(out, SemilinearSet::interval(-n, n));
}

}  // namespace

bool witness_defeats(const SemilinearSet& u, const SemilinearSet& v, const WitnessCovering& w, int n) {
  SemilinearSet acc;
  for (int k = 1; k <= n; ++k) {
    SemilinearSet m = w.member(k);
    if (!subset(m, v)) return false;
    acc = unite(acc, m);
    if (subset(u, acc)) return false;
  }
  for (const Rational& x : samples_of(v))
    if (!acc.contains(x)) return false;
  return true;
}

bool definitional_rwqc_probe(const SemilinearSet& u, const SemilinearSet& v, int n) {
  if (!subset(u, v)) return false;
  if (u.empty()) return true;
  std::vector<std::function<SemilinearSet(int)>> families;
  families.push_back([&v](int k) { return shrink(v, k); });
  families.push_back([&v](int k) { return intersect(v, SemilinearSet::interval(-k, k)); });
  for (const Rational& p : v.endpoints()) {
    families.push_back([&v, p](int k) {
      Rational r = frac(1, k);
      return diff(v, SemilinearSet::closed_interval(p - r, p + r));
    });
  }
  for (const auto& f : families) {
    bool found = false;
    for (int k = 1; k <= n && !found; ++k) found = subset(u, f(k));
    if (!found) return false;
  }
  return true;
}

std::optional<std::vector<int>> cover_finite_subcover(const SemilinearSet& u,
                                                      const std::vector<SemilinearSet>& family) {
  SemilinearSet all;
  for (const SemilinearSet& w : family) all = unite(all, w);
  if (!subset(u, all)) return std::nullopt;
  std::vector<int> keep;
  for (int i = 0; i < static_cast<int>(family.size()); ++i) keep.push_back(i);
  for (int i = static_cast<int>(family.size()) - 1; i >= 0; --i) {
    SemilinearSet rest;
    for (int j : keep)
      if (j != i) rest = unite(rest, family[j]);
    if (subset(u, rest)) keep.erase(std::find(keep.begin(), keep.end(), i));
  }
  return keep;
}

bool CellComplex::is_bounded_cell(int c) const { return is_vertex(c) || (c > 0 && c < size() - 1); }

SemilinearSet CellComplex::cell_set(int c) const {
  if (is_vertex(c)) return SemilinearSet::point(vertex_value(c));
  int i = c / 2;
  Endpoint lo = i == 0 ? Endpoint::neg_inf() : Endpoint::at(E[i - 1]);
  Endpoint hi = i == num_vertices() ? Endpoint::pos_inf() : Endpoint::at(E[i]);
  return SemilinearSet::interval(lo, hi);
}

Rational CellComplex::sample(int c) const {
  if (is_vertex(c)) return vertex_value(c);
  int i = c / 2;
  int m = num_vertices();
  if (m == 0) return 0;
  if (i == 0) return E[0] - 1;
  if (i == m) return E[m - 1] + 1;
  return (E[i - 1] + E[i]) / 2;
}

int CellComplex::locate(const Rational& q) const {
  auto it = std::lower_bound(E.begin(), E.end(), q);
  int i = static_cast<int>(it - E.begin());
  if (it != E.end() && *it == q) return vertex_cell(i);
  return edge_cell(i);
}

std::vector<std::pair<int, int>> CellComplex::covers() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < num_vertices(); ++i) {
    out.emplace_back(vertex_cell(i), edge_cell(i));
    out.emplace_back(vertex_cell(i), edge_cell(i + 1));
  }
  return out;
}

std::optional<std::vector<char>> CellComplex::mask_of(const SemilinearSet& s) const {
  for (const Rational& q : s.endpoints())
    if (!std::binary_search(E.begin(), E.end(), q)) return std::nullopt;
  std::vector<char> in(size());
  for (int c = 0; c < size(); ++c) in[c] = s.contains(sample(c));
  return in;
}

std::string CellComplex::cell_str(int c) const { return cell_set(c).str(); }

CellComplex cells(std::vector<Rational> e) {
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return CellComplex{std::move(e)};
}

std::vector<Rational> merge_points(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out = a;
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Refinement refine(const CellComplex& c, const std::vector<Rational>& extra) {
  Refinement r;
  r.fine = cells(merge_points(c.E, extra));
  r.to_coarse.resize(r.fine.size());
  for (int f = 0; f < r.fine.size(); ++f) r.to_coarse[f] = c.locate(r.fine.sample(f));
  return r;
}

std::vector<Rational> edge_samples(const CellComplex& c) {
  std::vector<Rational> out;
  for (int i = 0; i <= c.num_vertices(); ++i) out.push_back(c.sample(CellComplex::edge_cell(i)));
  return out;
}

std::vector<SemilinearSet> exhaustion_chain(int n) {
  if (n < 1) throw std::invalid_argument("exhaustion chain needs n >= 1");
  std::vector<SemilinearSet> out;
  for (int k = 1; k <= n; ++k) out.push_back(SemilinearSet::interval(-k, k));
  return out;
}

SemilinearSet lwc3_witness(const SemilinearSet& uprime, const SemilinearSet& u) {
  if (!rwqc(uprime, u)) throw std::invalid_argument("lwc3_witness needs U' ⊂⊂ U");
  SemilinearSet w;
  for (const Piece& p : u.pieces()) {
    SemilinearSet part = intersect(uprime, SemilinearSet::interval(p.lo, p.hi));
    if (part.empty()) continue;
    std::vector<Rational> ep = part.endpoints();
    Rational m = ep.front();
    Rational big = ep.back();
    Rational a = p.lo.finite() ? Rational((p.lo.q + m) / 2) : Rational(m - 1);
    Rational b = p.hi.finite() ? Rational((big + p.hi.q) / 2) : Rational(big + 1);
    w = unite(w, SemilinearSet::interval(a, b));
  }
  return w;
}

Rational random_grid_point(Rng& rng, int span, int den) {
  Rational q(rng.uniform(-static_cast<long>(span) * den, static_cast<long>(span) * den), den);
  q.canonicalize();
  return q;
}

SemilinearSet random_open(Rng& rng, int max_pieces, bool bounded, int span, int den) {
  int k = static_cast<int>(rng.uniform(0, max_pieces));
  std::vector<Rational> pts;
  while (static_cast<int>(pts.size()) < 2 * k) {
    Rational q = random_grid_point(rng, span, den);
    if (std::find(pts.begin(), pts.end(), q) == pts.end()) pts.push_back(q);
  }
  std::sort(pts.begin(), pts.end());
  std::vector<Piece> ps;
  for (int i = 0; i < k; ++i) ps.push_back({false, Endpoint::at(pts[2 * i]), Endpoint::at(pts[2 * i + 1])});
  if (!bounded && k > 0) {
    if (rng.coin(1, 3)) ps.front().lo = Endpoint::neg_inf();
    if (rng.coin(1, 3)) ps.back().hi = Endpoint::pos_inf();
  }
  return SemilinearSet::from_pieces(ps);
}

SemilinearSet random_set(Rng& rng, int max_pieces, int span, int den) {
  SemilinearSet s = random_open(rng, max_pieces, false, span, den);
  int adds = static_cast<int>(rng.uniform(0, 2));
  for (int i = 0; i < adds; ++i) s = unite(s, SemilinearSet::point(random_grid_point(rng, span, den)));
  int removes = static_cast<int>(rng.uniform(0, 2));
  for (int i = 0; i < removes; ++i) s = diff(s, SemilinearSet::point(random_grid_point(rng, span, den)));
  return s;
}

namespace {

// A sub-open with closure inside U: each piece shrunk to a random inner interval.
SemilinearSet random_inner(Rng& rng, const SemilinearSet& u) {
  SemilinearSet out;
  for (const Piece& p : u.pieces()) {
    if (p.point || rng.coin(1, 4)) continue;
    Rational a, b;
    if (p.lo.finite() && p.hi.finite()) {
      a = p.lo.q;
      b = p.hi.q;
    } else if (p.lo.finite()) {
      a = p.lo.q;
      b = a + 4;
    } else if (p.hi.finite()) {
      b = p.hi.q;
      a = b - 4;
    } else {
      a = -4;
      b = 0;
    }
    Rational w = b - a;
    Rational c = a + w * frac(rng.uniform(1, 3), 8);
    Rational d = b - w * frac(rng.uniform(1, 3), 8);
    out = unite(out, SemilinearSet::interval(c, d));
  }
  return out;
}

std::string pair_str(const SemilinearSet& a, const SemilinearSet& b) { return a.str() + " | " + b.str(); }

}  // namespace

LwcReport lwc_validate(int sample_size, std::uint64_t seed) {
  Rng rng(seed);
  LwcReport rep;
  const int probe = 64;
  for (int t = 0; t < sample_size; ++t) {
    // LWC1: shrinking neighborhoods of a point form a ⊂⊂-basis inside U.
    SemilinearSet u = random_open(rng, 3, false);
    if (!u.empty()) {
      const Piece& p = u.pieces()[rng.uniform(0, static_cast<long>(u.pieces().size()) - 1)];
      Rational x = p.lo.finite() && p.hi.finite() ? Rational((p.lo.q + p.hi.q) / 2)
                   : p.lo.finite()                ? Rational(p.lo.q + 1)
                   : p.hi.finite()                ? Rational(p.hi.q - 1)
                                                  : Rational(0);
      Rational r = 1;
      if (p.lo.finite()) r = std::min(r, Rational(x - p.lo.q));
      if (p.hi.finite()) r = std::min(r, Rational(p.hi.q - x));
      Rational eps = frac(1, 1L << rng.uniform(1, 6));
      bool ok = true;
      bool inside_eps = false;
      for (int k = 1; k <= 8; ++k) {
        Rational h = r / (1 << k);
        SemilinearSet nb = SemilinearSet::interval(x - h, x + h);
        ok = ok && nb.contains(x) && rwqc(nb, u) && definitional_rwqc_probe(nb, u, probe);
        inside_eps = inside_eps || h <= eps;
      }
      if (ok && inside_eps)
        ++rep.lwc1;
      else
        rep.counterexamples.push_back("LWC1 " + u.str() + " at " + qstr(x));
    }

    // LWC2: ⊂⊂ is stable under finite intersections.
    SemilinearSet a = random_open(rng, 3, false);
    SemilinearSet b = random_open(rng, 3, false);
    SemilinearSet ai = random_inner(rng, a);
    SemilinearSet bi = random_inner(rng, b);
    if (!rwqc(ai, a) || !rwqc(bi, b)) {
      rep.counterexamples.push_back("LWC2 inner generator " + pair_str(ai, a));
    } else {
      SemilinearSet lhs = intersect(ai, bi);
      SemilinearSet rhs = intersect(a, b);
      if (rwqc(lhs, rhs) && definitional_rwqc_probe(lhs, rhs, probe))
        ++rep.lwc2;
      else
        rep.counterexamples.push_back("LWC2 " + pair_str(lhs, rhs));
    }

    // LWC3: interpolation U' ⊂⊂ W ⊂⊂ U.
    SemilinearSet w = lwc3_witness(ai, a);
    if (rwqc(ai, w) && rwqc(w, a) && definitional_rwqc_probe(ai, w, probe) && definitional_rwqc_probe(w, a, probe))
      ++rep.lwc3;
    else
      rep.counterexamples.push_back("LWC3 " + pair_str(ai, a) + " W=" + w.str());
  }
  return rep;
}

}  // namespace tsite
