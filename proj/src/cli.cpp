#include "gradecm/cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <tuple>
#include <variant>

namespace gradecm {

using nlohmann::json;

DslError::DslError(Kind kind, int line, int col, const std::string& msg)
    : std::runtime_error(line > 0 ? std::to_string(line) + ":" + std::to_string(col) + ": " + msg : msg),
      kind_(kind),
      line_(line),
      col_(col) {}

std::string Command::opt(const std::string& key, const std::string& fallback) const {
  for (const auto& [k, v] : opts)
    if (k == key) return v;
  return fallback;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Splits at commas outside parentheses.
std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

Field parse_field(const std::string& s) {
  if (s == "QQ") return Field::rationals();
  if (s.rfind("GF(", 0) == 0 && s.back() == ')') {
    std::string n = s.substr(3, s.size() - 4);
    if (n.empty() || !std::all_of(n.begin(), n.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw std::invalid_argument("bad field '" + s + "'");
    return Field::prime(std::stoull(n));
  }
  throw std::invalid_argument("unknown field '" + s + "'");
}

}  // namespace

class DslParser {
 public:
  DslParser(Session& s, const std::string& text) : s_(s), t_(text) {
    for (auto it = s_.bindings_.rbegin(); it != s_.bindings_.rend(); ++it)
      if (ring_like(it->kind)) {
        current_ = it->name;
        break;
      }
  }

  void run() {
    for (;;) {
      skip();
      if (i_ >= t_.size()) return;
      statement();
    }
  }

 private:
  struct Piece {
    std::string text;
    int line, col;
  };
  using K = DslError::Kind;

  Session& s_;
  const std::string& t_;
  std::size_t i_ = 0;
  int line_ = 1, col_ = 1;
  std::string current_;

  static bool ring_like(Binding::Kind k) {
    return k == Binding::Kind::Ring || k == Binding::Kind::Limit || k == Binding::Kind::Perfect ||
           k == Binding::Kind::Invariant;
  }

  [[noreturn]] void fail(K kind, const std::string& msg, int line, int col) { throw DslError(kind, line, col, msg); }
  [[noreturn]] void fail(const std::string& msg) { fail(K::Syntax, msg, line_, col_); }

  char peek() const { return i_ < t_.size() ? t_[i_] : '\0'; }
  void advance() {
    if (t_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }
  void skip() {
    while (i_ < t_.size()) {
      if (std::isspace(static_cast<unsigned char>(t_[i_]))) {
        advance();
      } else if (t_[i_] == '#') {
        while (i_ < t_.size() && t_[i_] != '\n') advance();
      } else {
        break;
      }
    }
  }
  bool accept(char c) {
    skip();
    if (peek() != c) return false;
    advance();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }
  std::string ident() {
    skip();
    if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) fail("expected a name");
    std::string s;
    while (i_ < t_.size() && ident_char(peek())) {
      s += peek();
      advance();
    }
    return s;
  }
  bool peek_ident(const std::string& word) {
    skip();
    if (t_.compare(i_, word.size(), word) != 0) return false;
    std::size_t j = i_ + word.size();
    return j >= t_.size() || !ident_char(t_[j]);
  }
  int integer() {
    skip();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
    std::string s;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      s += peek();
      advance();
    }
    return std::stoi(s);
  }

  // '(' piece, piece, ... ')' with pieces split at depth-one commas. "()" is empty.
  std::vector<Piece> paren_list() {
    expect('(');
    std::vector<Piece> out;
    Piece cur{"", line_, col_};
    int depth = 0;
    for (;;) {
      if (i_ >= t_.size()) fail("unterminated list");
      char c = peek();
      if (c == '(') ++depth;
      if (c == ')' && depth-- == 0) {
        advance();
        break;
      }
      if (c == ',' && depth == 0) {
        advance();
        out.push_back(cur);
        cur = Piece{"", line_, col_};
        continue;
      }
      cur.text += c;
      advance();
    }
    out.push_back(cur);
    if (out.size() == 1 && trim(out[0].text).empty()) return {};
    for (auto& p : out) {
      std::size_t lead = 0;
      while (lead < p.text.size() && std::isspace(static_cast<unsigned char>(p.text[lead]))) ++lead;
      if (lead == p.text.size()) fail(K::Syntax, "empty term", p.line, p.col);
      p.col += static_cast<int>(lead);  // pieces rarely span lines
      p.text = trim(p.text);
    }
    return out;
  }

  Poly poly(const RingPtr& A, const Piece& p) {
    try {
      return parse_poly(A, p.text);
    } catch (const std::exception& e) {
      fail(K::Syntax, e.what(), p.line, p.col);
    }
  }

  void fresh(const std::string& name, int line, int col) {
    if (s_.has(name)) fail(K::DuplicateName, "duplicate name '" + name + "'", line, col);
  }

  const Binding& ref(const std::string& name, int line, int col) {
    if (!s_.has(name)) fail(K::UnknownReference, "unknown name '" + name + "'", line, col);
    return s_.at(name);
  }

  // key=value pairs up to ';'.
  std::vector<std::tuple<std::string, std::string, int, int>> kv_list() {
    std::vector<std::tuple<std::string, std::string, int, int>> out;
    for (;;) {
      skip();
      if (peek() == ';' || i_ >= t_.size()) return out;
      int l = line_, c = col_;
      std::string k = ident();
      expect('=');
      skip();
      std::string v;
      while (i_ < t_.size() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != ';') {
        v += peek();
        advance();
      }
      if (v.empty()) fail("missing value for '" + k + "'");
      out.emplace_back(k, v, l, c);
    }
  }

  void end_statement() {
    if (!accept(';')) fail("expected ';'");
  }

  void add(Binding b) {
    if (ring_like(b.kind)) current_ = b.name;
    s_.bindings_.push_back(std::move(b));
  }

  void statement() {
    int l = line_, c = col_;
    std::string kw = ident();
    if (kw == "ring") return ring_stmt();
    if (kw == "ideal") return ideal_stmt();
    if (kw == "module") return module_stmt();
    if (kw == "family") return family_stmt();
    if (kw == "limitring" || kw == "perfect" || kw == "veronese" || kw == "valuation") return constructor_stmt(kw);
    if (kw == "idealize") return idealize_stmt();
    if (kw == "grade" || kw == "cm-check" || kw == "height" || kw == "min") return command_stmt(kw, l);
    fail(K::Syntax, "unknown statement '" + kw + "'", l, c);
  }

  void ring_stmt() {
    skip();
    int l = line_, c = col_;
    std::string name = ident();
    fresh(name, l, c);
    expect('=');
    skip();
    int fl = line_, fc = col_;
    std::string fs = ident();
    if (fs == "GF") {
      expect('(');
      fs += "(" + std::to_string(integer()) + ")";
      expect(')');
    }
    Field k;
    try {
      k = parse_field(fs);
    } catch (const UnsupportedField& e) {
      fail(K::Unsupported, e.what(), fl, fc);
    } catch (const std::exception& e) {
      fail(K::Unsupported, e.what(), fl, fc);
    }
    expect('[');
    std::vector<std::string> vars;
    skip();
    if (peek() != ']') {
      do {
        skip();
        int vl = line_, vc = col_;
        std::string v = ident();
        if (std::find(vars.begin(), vars.end(), v) != vars.end())
          fail(K::DuplicateName, "duplicate variable '" + v + "'", vl, vc);
        vars.push_back(v);
      } while (accept(','));
    }
    expect(']');
    RingPtr A = PolyRing::make(k, vars);
    std::vector<Poly> rel;
    if (accept('/')) {
      skip();
      for (const auto& p : paren_list()) rel.push_back(poly(A, p));
    }
    end_statement();
    Binding b;
    b.kind = Binding::Kind::Ring;
    b.name = name;
    b.ring = PresentedRing::make(A, rel);
    b.text = "ring " + name + " = " + b.ring->to_string() + ";";
    add(std::move(b));
  }

  std::string owner_clause() {
    if (peek_ident("in")) {
      ident();
      skip();
      int l = line_, c = col_;
      std::string o = ident();
      const Binding& b = ref(o, l, c);
      if (!ring_like(b.kind)) fail(K::UnknownReference, "'" + o + "' is not a ring", l, c);
      return o;
    }
    if (current_.empty()) fail(K::UnknownReference, "no ring declared", line_, col_);
    return current_;
  }

  // Builds the ideal of `owner` from pieces; fills ideal, ideal_gens, level.
  void make_ideal(Binding& b, const std::string& owner, const std::vector<Piece>& pieces) {
    const Binding& o = s_.at(owner);
    b.owner = owner;
    std::vector<std::string> gens;
    for (const auto& p : pieces) gens.push_back(p.text);
    try {
      if (o.kind == Binding::Kind::Limit) {
        b.level = o.limit->min_level(gens);
        b.ideal = std::make_shared<Ideal>(o.limit->ideal(b.level, gens));
        b.ideal_gens = gens;
      } else if (o.kind == Binding::Kind::Perfect) {
        b.level = 0;
        for (const auto& g : gens) b.level = std::max(b.level, o.perfect->min_level(o.perfect->parse(g)));
        b.ideal = std::make_shared<Ideal>(o.perfect->ideal(b.level, gens));
        b.ideal_gens = gens;
      }
    } catch (const std::exception& e) {
      const Piece& p = pieces.empty() ? Piece{"", line_, col_} : pieces.front();
      fail(K::Syntax, e.what(), p.line, p.col);
    }
    if (!b.ideal) {
      RingHandle R = s_.ring(owner);
      std::vector<Poly> g;
      for (const auto& p : pieces) {
        g.push_back(poly(R->ambient(), p));
        b.ideal_gens.push_back(g.back().to_string());
      }
      b.ideal = std::make_shared<Ideal>(R, g);
    }
    b.ring = b.ideal->ring();
  }

  void ideal_stmt() {
    skip();
    int l = line_, c = col_;
    std::string name = ident();
    fresh(name, l, c);
    expect('=');
    skip();
    auto pieces = paren_list();
    std::string owner = owner_clause();
    end_statement();
    Binding b;
    b.kind = Binding::Kind::Ideal;
    b.name = name;
    make_ideal(b, owner, pieces);
    b.text = "ideal " + name + " = (" + join(b.ideal_gens, ", ") + ") in " + owner + ";";
    add(std::move(b));
  }

  void module_stmt() {
    skip();
    int l = line_, c = col_;
    std::string name = ident();
    fresh(name, l, c);
    expect('=');
    skip();
    int rl = line_, rc = col_;
    std::string rname = ident();
    const Binding& rb = ref(rname, rl, rc);
    if (!ring_like(rb.kind)) fail(K::UnknownReference, "'" + rname + "' is not a ring", rl, rc);
    RingHandle R = s_.ring(rname);
    std::uint32_t rank = 1;
    bool explicit_rank = false;
    if (accept('^')) {
      rank = static_cast<std::uint32_t>(integer());
      explicit_rank = true;
    }
    PresentedModule M = PresentedModule::free(R, rank);
    if (accept('/')) {
      skip();
      if (peek() == '(') {
        const RingPtr& A = R->ambient();
        for (const auto& p : paren_list()) {
          Poly v(A);
          if (!explicit_rank || rank == 1) {
            std::string txt = p.text;
            if (rank == 1 && txt.size() > 1 && txt.front() == '(' && txt.back() == ')' && split_top(txt.substr(1, txt.size() - 2)).size() == 1)
              txt = txt.substr(1, txt.size() - 2);
            v = poly(A, Piece{txt, p.line, p.col}).shift_components(1);
          } else {
            if (p.text.front() != '(' || p.text.back() != ')')
              fail(K::Syntax, "expected a vector of length " + std::to_string(rank), p.line, p.col);
            auto comps = split_top(p.text.substr(1, p.text.size() - 2));
            if (comps.size() != rank)
              fail(K::Syntax, "expected a vector of length " + std::to_string(rank), p.line, p.col);
            for (std::uint32_t j = 0; j < rank; ++j) {
              if (comps[j].empty()) fail(K::Syntax, "empty term", p.line, p.col);
              v += poly(A, Piece{comps[j], p.line, p.col}).shift_components(j + 1);
            }
          }
          if (!v.is_zero()) M.relations.push_back(v);
        }
      } else {
        int il = line_, ic = col_;
        std::string iname = ident();
        const Binding& ib = ref(iname, il, ic);
        if (ib.kind != Binding::Kind::Ideal) fail(K::UnknownReference, "'" + iname + "' is not an ideal", il, ic);
        if (rank != 1) fail(K::Syntax, "a quotient by an ideal has rank 1", il, ic);
        M = PresentedModule::quotient(*ib.ideal);
      }
    }
    end_statement();
    Binding b;
    b.kind = Binding::Kind::Module;
    b.name = name;
    b.owner = rname;
    b.ring = R;
    b.module = std::make_shared<PresentedModule>(M);
    std::vector<std::string> cols;
    for (const auto& v : M.relations) {
      std::vector<std::string> comps;
      for (std::uint32_t j = 1; j <= M.rank; ++j) comps.push_back(v.component(j).to_string());
      cols.push_back("(" + join(comps, ", ") + ")");
    }
    b.text = "module " + name + " = " + rname + "^" + std::to_string(M.rank);
    if (!cols.empty()) b.text += " / (" + join(cols, ", ") + ")";
    b.text += ";";
    add(std::move(b));
  }

  void family_stmt() {
    skip();
    int l = line_, c = col_;
    std::string name = ident();
    fresh(name, l, c);
    expect('=');
    Binding b;
    b.kind = Binding::Kind::Family;
    b.name = name;
    if (peek_ident("generated")) {
      ident();
      FamilyOptions opt;
      opt.max_degree = s_.options.degree_bound;
      opt.cap = s_.options.family_cap;
      for (;;) {
        if (peek_ident("degree")) {
          ident();
          opt.max_degree = integer();
        } else if (peek_ident("gens")) {
          ident();
          opt.max_gens = integer();
        } else if (peek_ident("cap")) {
          ident();
          opt.cap = static_cast<std::size_t>(integer());
        } else if (peek_ident("seed")) {
          ident();
          opt.seed = static_cast<unsigned>(integer());
        } else {
          break;
        }
      }
      std::string owner = owner_clause();
      end_statement();
      b.owner = owner;
      b.ring = s_.ring(owner);
      b.family = std::make_shared<TestFamily>(generated_family(b.ring, opt));
      b.text = "family " + name + " = generated degree " + std::to_string(opt.max_degree) + " gens " +
               std::to_string(opt.max_gens) + " cap " + std::to_string(opt.cap) + " seed " + std::to_string(opt.seed) +
               " in " + owner + ";";
    } else {
      expect('{');
      std::vector<std::variant<std::string, std::vector<Piece>>> items;
      std::vector<std::pair<int, int>> where;
      skip();
      if (peek() != '}') {
        do {
          skip();
          where.emplace_back(line_, col_);
          if (peek() == '(')
            items.emplace_back(paren_list());
          else
            items.emplace_back(ident());
        } while (accept(','));
      }
      expect('}');
      std::string owner = owner_clause();
      end_statement();
      b.owner = owner;
      b.ring = s_.ring(owner);
      b.family = std::make_shared<TestFamily>();
      b.family->ring = b.ring;
      std::vector<std::string> printed;
      for (std::size_t k = 0; k < items.size(); ++k) {
        Ideal a;
        if (auto* n = std::get_if<std::string>(&items[k])) {
          const Binding& ib = ref(*n, where[k].first, where[k].second);
          if (ib.kind != Binding::Kind::Ideal)
            fail(K::UnknownReference, "'" + *n + "' is not an ideal", where[k].first, where[k].second);
          a = *ib.ideal;
        } else {
          std::vector<Poly> g;
          for (const auto& p : std::get<std::vector<Piece>>(items[k])) g.push_back(poly(b.ring->ambient(), p));
          a = Ideal(b.ring, g);
        }
        if (b.family->add(a, FamilyTag::User)) printed.push_back(a.to_string());
      }
      b.text = "family " + name + " = {" + join(printed, ", ") + "} in " + owner + ";";
    }
    add(std::move(b));
  }

  void constructor_stmt(const std::string& kw) {
    skip();
    int l = line_, c = col_;
    std::string name;
    {
      std::size_t save_i = i_;
      int save_l = line_, save_c = col_;
      std::string first = ident();
      skip();
      if (peek() == '=') {
        i_ = save_i;
        line_ = save_l;
        col_ = save_c;
      } else {
        name = first;
      }
    }
    const std::string def = kw == "limitring" ? "L" : kw == "perfect" ? "P" : kw == "veronese" ? "V" : "W";
    if (name.empty()) name = def;
    fresh(name, l, c);
    auto kv = kv_list();
    end_statement();
    auto get = [&](const std::string& key, const std::string& fallback) -> std::string {
      for (const auto& [k, v, kl, kc] : kv)
        if (k == key) return v;
      if (fallback.empty()) fail(K::Syntax, "missing " + key + "=", l, c);
      return fallback;
    };
    for (const auto& [k, v, kl, kc] : kv) {
      static const std::map<std::string, std::vector<std::string>> allowed{
          {"limitring", {"base", "prefix"}}, {"perfect", {"p", "vars"}}, {"veronese", {"n", "vars", "field"}},
          {"valuation", {"rank"}}};
      const auto& ok = allowed.at(kw);
      if (std::find(ok.begin(), ok.end(), k) == ok.end()) fail(K::Syntax, "unknown key '" + k + "'", kl, kc);
    }
    auto to_int = [&](const std::string& key, const std::string& v) {
      try {
        std::size_t pos = 0;
        int x = std::stoi(v, &pos);
        if (pos != v.size() || x < 0) throw std::invalid_argument("");
        return x;
      } catch (const std::exception&) {
        fail(K::Syntax, "expected a nonnegative integer for " + key, l, c);
      }
    };
    auto vars_of = [&](const std::string& v) {
      std::vector<std::string> out;
      std::stringstream ss(v);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(item);
      return out;
    };
    Binding b;
    b.name = name;
    try {
      if (kw == "limitring") {
        std::string base = get("base", "QQ"), prefix = get("prefix", "X");
        RingHandle R;
        if (s_.has(base) && ring_like(s_.at(base).kind))
          R = s_.ring(base);
        else
          R = PresentedRing::make(PolyRing::make(parse_field(base), {}));
        b.kind = Binding::Kind::Limit;
        b.limit = std::make_shared<LimitRing>(R, prefix);
        b.ring = R;
        b.text = "limitring " + name + " base=" + base + " prefix=" + prefix + ";";
      } else if (kw == "perfect") {
        int p = to_int("p", get("p", ""));
        std::string vars = get("vars", "");
        b.kind = Binding::Kind::Perfect;
        b.perfect = std::make_shared<PerfectClosure>(static_cast<std::uint32_t>(p), vars_of(vars));
        b.ring = b.perfect->level(0);
        b.text = "perfect " + name + " p=" + std::to_string(p) + " vars=" + vars + ";";
      } else if (kw == "veronese") {
        int n = to_int("n", get("n", ""));
        std::string vars = get("vars", ""), field = get("field", "QQ");
        auto v = vars_of(vars);
        b.kind = Binding::Kind::Invariant;
        b.invariant = std::make_shared<InvariantRing>(
            invariant_ring(PolyRing::make(parse_field(field), v), GroupAction::veronese(static_cast<int>(v.size()), n)));
        b.ring = b.invariant->presentation;
        b.text = "veronese " + name + " n=" + std::to_string(n) + " vars=" + vars + " field=" + field + ";";
      } else {
        int r = to_int("rank", get("rank", ""));
        b.kind = Binding::Kind::Valuation;
        b.valuation = std::make_shared<ValuationModel>(r);
        b.text = "valuation " + name + " rank=" + std::to_string(r) + ";";
      }
    } catch (const DslError&) {
      throw;
    } catch (const UnsupportedField& e) {
      fail(K::Unsupported, e.what(), l, c);
    } catch (const std::exception& e) {
      fail(K::Syntax, e.what(), l, c);
    }
    add(std::move(b));
  }

  void idealize_stmt() {
    skip();
    int l = line_, c = col_;
    std::string a = ident();
    std::string name = "T";
    if (accept('=')) {
      name = a;
      skip();
      l = line_;
      c = col_;
      a = ident();
    }
    fresh(name, l, c);
    const Binding& rb = ref(a, l, c);
    if (!ring_like(rb.kind)) fail(K::UnknownReference, "'" + a + "' is not a ring", l, c);
    skip();
    int ml = line_, mc = col_;
    std::string m = ident();
    const Binding& mb = ref(m, ml, mc);
    if (mb.kind != Binding::Kind::Module) fail(K::UnknownReference, "'" + m + "' is not a module", ml, mc);
    if (mb.module->ring.get() != s_.ring(a).get()) fail(K::Syntax, "module is not over " + a, ml, mc);
    end_statement();
    Binding b;
    b.kind = Binding::Kind::Ring;
    b.name = name;
    b.ring = trivial_extension(*mb.module);
    b.text = "idealize " + name + " = " + a + " " + m + ";";
    add(std::move(b));
  }

  void command_stmt(const std::string& verb, int line) {
    Command cmd;
    cmd.verb = verb;
    cmd.line = line;
    for (;;) {
      skip();
      if (peek() == ';' || i_ >= t_.size()) break;
      int l = line_, c = col_;
      std::string w = ident();
      if (accept('=')) {
        skip();
        std::string v;
        while (i_ < t_.size() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != ';') {
          v += peek();
          advance();
        }
        if (v.empty()) fail("missing value for '" + w + "'");
        if ((w == "ring" || w == "family" || w == "module") && !s_.has(v))
          fail(K::UnknownReference, "unknown name '" + v + "'", l, c);
        cmd.opts.emplace_back(w, v);
      } else if (w == "on" && verb == "grade") {
        skip();
        int ml = line_, mc = col_;
        std::string m = ident();
        if (ref(m, ml, mc).kind != Binding::Kind::Module)
          fail(K::UnknownReference, "'" + m + "' is not a module", ml, mc);
        cmd.opts.emplace_back("module", m);
      } else {
        if (verb != "cm-check" && ref(w, l, c).kind != Binding::Kind::Ideal)
          fail(K::UnknownReference, "'" + w + "' is not an ideal", l, c);
        cmd.args.push_back(w);
      }
    }
    end_statement();
    if (cmd.args.size() != 1) fail(K::Syntax, verb + " takes one argument", line, 1);
    if (verb == "cm-check") {
      try {
        parse_sense(cmd.args[0]);
      } catch (const std::exception& e) {
        fail(K::Syntax, e.what(), line, 1);
      }
    }
    cmd.text = verb + " " + cmd.args[0];
    for (const auto& [k, v] : cmd.opts) cmd.text += " " + k + "=" + v;
    cmd.text += ";";
    s_.commands_.push_back(std::move(cmd));
  }
};

void Session::parse(const std::string& text) {
  Session copy = *this;
  DslParser(copy, text).run();
  *this = std::move(copy);
}

std::string Session::print() const {
  std::string s;
  for (const auto& b : bindings_) s += b.text + "\n";
  for (const auto& c : commands_) s += c.text + "\n";
  return s;
}

bool Session::has(const std::string& name) const {
  for (const auto& b : bindings_)
    if (b.name == name) return true;
  return false;
}

const Binding& Session::at(const std::string& name) const {
  for (const auto& b : bindings_)
    if (b.name == name) return b;
  throw DslError(DslError::Kind::UnknownReference, 0, 0, "unknown name '" + name + "'");
}

RingHandle Session::ring(const std::string& name) const {
  const Binding& b = at(name);
  switch (b.kind) {
    case Binding::Kind::Ring:
    case Binding::Kind::Invariant:
    case Binding::Kind::Limit:
    case Binding::Kind::Perfect: return b.ring;
    default: throw DslError(DslError::Kind::UnknownReference, 0, 0, "'" + name + "' is not a ring");
  }
}

const Ideal& Session::ideal(const std::string& name) const {
  const Binding& b = at(name);
  if (b.kind != Binding::Kind::Ideal)
    throw DslError(DslError::Kind::UnknownReference, 0, 0, "'" + name + "' is not an ideal");
  return *b.ideal;
}

PresentedModule Session::module(const std::string& name) const {
  const Binding& b = at(name);
  if (b.kind != Binding::Kind::Module)
    throw DslError(DslError::Kind::UnknownReference, 0, 0, "'" + name + "' is not a module");
  return *b.module;
}

json value_json(int v) {
  if (v == kInfinity) return "inf";
  return v;
}

json to_json(const GradeReport& g) {
  json j;
  j["notion"] = to_string(g.notion);
  j["value"] = value_json(g.value);
  j["first_nonvanishing"] = g.first_nonvanishing ? json(*g.first_nonvanishing) : json(nullptr);
  j["witness"] = g.cohomology_witness ? json(g.cohomology_witness->to_string()) : json(nullptr);
  json seq = json::array();
  for (const auto& f : g.sequence) seq.push_back(f.to_string());
  j["sequence"] = seq;
  j["witness_ring"] = g.witness_ring ? json(g.witness_ring->to_string()) : json(nullptr);
  json lv = json::array();
  for (int v : g.levels) lv.push_back(value_json(v));
  j["levels"] = lv;
  j["stabilization_level"] = g.stabilization_level;
  j["truncated"] = g.truncated;
  j["exact"] = g.exact;
  return j;
}

json to_json(const CMReport& r) {
  json j;
  j["sense"] = to_string(r.sense);
  j["verdict"] = to_string(r.verdict);
  j["tested"] = r.tested;
  j["skipped"] = r.skipped;
  j["mu_upper_bound"] = r.mu_upper_bound;
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    j["counterexample"] = {{"ideal", c.ideal.to_string()},
                           {"height", value_json(c.height)},
                           {"grade", value_json(c.grade)},
                           {"detail", c.detail}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

namespace {

json level_json(const LevelCheck& c) {
  return {{"level", c.level},
          {"grade", value_json(c.grade)},
          {"height", value_json(c.height)},
          {"grade_next", value_json(c.grade_next)},
          {"height_next", value_json(c.height_next)},
          {"stable", c.stable()}};
}

}  // namespace

json run_grade(const Session& s, const std::string& ideal, const std::string& module, const std::string& notion) {
  const Binding& ib = s.at(ideal);
  const Ideal& a = s.ideal(ideal);
  PresentedModule M = module.empty() ? PresentedModule::free(a.ring()) : s.module(module);
  if (M.ring.get() != a.ring().get() && M.ring->to_string() != a.ring()->to_string())
    throw std::invalid_argument("ideal and module live over different rings");
  M.ring = a.ring();
  GradeReport g;
  if (notion == "koszul")
    g = koszul_grade(a, M);
  else if (notion == "ext")
    g = ext_grade(a, M);
  else if (notion == "classical")
    g = classical_grade(a, M);
  else if (notion == "pgrade")
    g = polynomial_grade_witness(a, M);
  else if (notion == "hgrade")
    g = hgrade_truncated(a, M, s.options.n_max);
  else if (notion == "cech")
    g = cech_grade(a, M);
  else
    throw std::invalid_argument("unknown notion '" + notion + "'");
  json j = to_json(g);
  j["schema"] = kSchemaVersion;
  j["kind"] = "grade";
  j["ideal"] = a.to_string();
  j["ring"] = a.ring()->to_string();
  j["module"] = module.empty() ? json("R") : json(module);
  if (!ib.owner.empty() && module.empty()) {
    const Binding& o = s.at(ib.owner);
    if (o.kind == Binding::Kind::Limit) j["level_check"] = level_json(o.limit->check(ib.ideal_gens, ib.level));
    if (o.kind == Binding::Kind::Perfect) j["level_check"] = level_json(o.perfect->check(ib.ideal_gens, ib.level));
  }
  return j;
}

namespace {

TestFamily resolve_family(const Session& s, const RingHandle& R, const std::string& family) {
  if (family.empty()) {
    FamilyOptions opt;
    opt.max_degree = s.options.degree_bound;
    opt.cap = s.options.family_cap;
    return generated_family(R, opt);
  }
  if (s.has(family)) {
    const Binding& b = s.at(family);
    if (b.kind != Binding::Kind::Family)
      throw DslError(DslError::Kind::UnknownReference, 0, 0, "'" + family + "' is not a family");
    return *b.family;
  }
  std::ifstream in(family);
  if (!in) throw DslError(DslError::Kind::UnknownReference, 0, 0, "no family or file named '" + family + "'");
  TestFamily fam;
  fam.ring = R;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '(' && line.back() == ')') line = line.substr(1, line.size() - 2);
    std::vector<std::string> gens;
    for (const auto& g : split_top(line))
      if (!g.empty()) gens.push_back(g);
    try {
      fam.add(Ideal::parse(R, gens), FamilyTag::User);
    } catch (const std::exception& e) {
      throw DslError(DslError::Kind::Syntax, n, 1, family + ": " + e.what());
    }
  }
  return fam;
}

}  // namespace

json run_cm_check(const Session& s, const std::string& sense, const std::string& ring, const std::string& family) {
  RingHandle R = s.ring(ring);
  Sense sn = parse_sense(sense);
  TestFamily fam = resolve_family(s, R, family);
  CMReport r;
  switch (sn) {
    case Sense::FgIdeals: r = check_sense_fg(R, fam); break;
    case Sense::Primes: r = check_sense_primes(R, family_primes(fam)); break;
    case Sense::Glaz: r = check_sense_glaz(R, family_primes(fam)); break;
    case Sense::Max: r = check_sense_max(R); break;
    case Sense::WB: r = check_wb_unmixed(R, fam, false); break;
    case Sense::WBH: r = check_wb_unmixed(R, fam, true); break;
    case Sense::HMSurrogate: r = check_hm_surrogate(R, default_sequences(R)); break;
  }
  json j = to_json(r);
  j["schema"] = kSchemaVersion;
  j["kind"] = "cm-check";
  j["ring"] = R->to_string();
  json f = json::array();
  for (std::size_t i = 0; i < fam.ideals.size(); ++i)
    f.push_back({{"ideal", fam.ideals[i].to_string()}, {"tag", to_string(fam.tags[i])}});
  j["family"] = f;
  return j;
}

json Session::run_commands() const {
  json out = json::array();
  for (const auto& c : commands_) {
    json j;
    if (c.verb == "grade") {
      j = run_grade(*this, c.args[0], c.opt("module"), c.opt("notion", "koszul"));
    } else if (c.verb == "cm-check") {
      std::string r = c.opt("ring");
      if (r.empty())
        for (auto it = bindings_.rbegin(); it != bindings_.rend() && r.empty(); ++it)
          if (it->kind == Binding::Kind::Ring || it->kind == Binding::Kind::Invariant) r = it->name;
      j = run_cm_check(*this, c.args[0], r, c.opt("family"));
    } else if (c.verb == "height") {
      const Ideal& a = ideal(c.args[0]);
      j = {{"schema", kSchemaVersion}, {"kind", "height"}, {"ideal", a.to_string()}, {"value", value_json(height(a))}};
    } else {
      const Ideal& a = ideal(c.args[0]);
      json ps = json::array();
      for (const auto& p : minimal_primes(a))
        ps.push_back({{"prime", p.ideal.to_string()}, {"certified", p.certified}});
      j = {{"schema", kSchemaVersion}, {"kind", "min"}, {"ideal", a.to_string()}, {"primes", ps}};
    }
    j["command"] = c.text;
    out.push_back(j);
  }
  return out;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"gradecm: grade and Cohen-Macaulay checks for affine algebras"};
  app.require_subcommand(1);
  SessionOptions opts;
  std::string json_out;
  app.add_option("--budget", opts.budget, "Groebner reduction-step budget");
  app.add_option("--nmax", opts.n_max, "largest power for the truncated local-cohomology grade");
  app.add_option("--degree-bound", opts.degree_bound, "degree bound for generated families");
  app.add_option("--workers", opts.workers, "worker threads for the corpus")->check(CLI::PositiveNumber);
  app.add_option("--json", json_out, "also write the JSON report to this file");

  std::string input, ideal, module, notion = "koszul", sense, ring, family, select;
  auto* grade = app.add_subcommand("grade", "grade of an ideal on a module");
  grade->add_option("--input", input, "DSL file")->required();
  grade->add_option("--ideal", ideal, "ideal name")->required();
  grade->add_option("--module", module, "module name (default: the ring)");
  grade->add_option("--notion", notion, "koszul|ext|classical|pgrade|hgrade|cech");
  auto* cm = app.add_subcommand("cm-check", "Cohen-Macaulay sense check over a test family");
  cm->add_option("--input", input, "DSL file")->required();
  cm->add_option("--sense", sense, "fg|primes|max|glaz|wb|wbh|hm")->required();
  cm->add_option("--ring", ring, "ring name")->required();
  cm->add_option("--family", family, "family name or file with one ideal per line");
  auto* corpus = app.add_subcommand("corpus", "run the example corpus");
  corpus->add_option("--select", select, "comma-separated item ids");
  bool list = false;
  corpus->add_flag("--list", list, "print the item ids");
  auto* run = app.add_subcommand("run", "execute the commands in a DSL file");
  run->add_option("--input", input, "DSL file")->required();
  auto* print = app.add_subcommand("print", "print a DSL file in canonical form");
  print->add_option("--input", input, "DSL file")->required();
  for (auto* sub : {grade, cm, corpus, run, print}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (opts.budget > 0) set_default_budget(opts.budget);
    json out;
    int status = 0;
    if (*corpus) {
      if (list) {
        for (const auto& id : corpus_ids()) std::cout << id << "\n";
        return 0;
      }
      std::vector<std::string> sel;
      if (!select.empty()) sel = split_top(select);
      out = run_corpus(sel, opts.workers);
      status = out["pass"].get<bool>() ? 0 : 1;
    } else {
      Session s;
      s.options = opts;
      s.parse(read_file(input));
      if (*grade) {
        out = run_grade(s, ideal, module, notion);
      } else if (*cm) {
        out = run_cm_check(s, sense, ring, family);
        status = out["verdict"] == "fail" ? 1 : 0;
      } else if (*run) {
        out = s.run_commands();
        for (const auto& j : out)
          if (j.value("verdict", "") == "fail") status = 1;
      } else {
        std::cout << s.print();
        return 0;
      }
    }
    std::string text = out.dump(2);
    std::cout << text << "\n";
    if (!json_out.empty()) {
      std::ofstream f(json_out);
      if (!f) throw std::runtime_error("cannot write '" + json_out + "'");
      f << text << "\n";
    }
    return status;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace gradecm
