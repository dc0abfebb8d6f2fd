#include "kcone/polynomial.hpp"

#include "kcone/errors.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace kcone {

int total_degree(const Exponents& e) {
  int d = 0;
  for (int v : e) d += v;
  return d;
}

int grevlex_compare(const Exponents& a, const Exponents& b) {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db ? -1 : 1;
  // Among equal degrees the larger monomial has the smaller exponent in the
  // last variable where they differ.
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

namespace {

void enumerate(std::size_t var, int remaining, Exponents& cur, std::vector<Exponents>& out) {
  if (var + 1 == cur.size()) {
    cur[var] = remaining;
    out.push_back(cur);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    cur[var] = k;
    enumerate(var + 1, remaining - k, cur, out);
  }
}

}  // namespace

std::vector<Exponents> monomials_of_degree(std::size_t nvars, int t) {
  std::vector<Exponents> out;
  if (t < 0 || nvars == 0) return out;
  Exponents cur(nvars, 0);
  enumerate(0, t, cur, out);
  std::sort(out.begin(), out.end(), GrevlexGreater{});
  return out;
}

std::size_t monomial_count(std::size_t nvars, int t) {
  if (t < 0) return 0;
  // binom(t + nvars - 1, nvars - 1)
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(t) + nvars - 1, nvars - 1);
  return b.get_ui();
}

// ---------------------------------------------------------------------------

RingContext::RingContext(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() < 2) throw InvalidInput("a ring needs at least two variables");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw InvalidInput("empty variable name");
    if (!seen.insert(n).second) throw InvalidInput("duplicate variable name '" + n + "'");
  }
}

long RingContext::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<long>(i);
  }
  return -1;
}

RingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<const RingContext>(std::move(names));
}

// ---------------------------------------------------------------------------

HPoly::HPoly(RingPtr ring, int degree) : ring_(std::move(ring)), degree_(degree) {}

HPoly::HPoly(RingPtr ring, TermMap terms) : ring_(std::move(ring)) {
  bool first = true;
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->first.size() != ring_->size()) throw InvalidInput("exponent length mismatch");
    if (sgn(it->second) == 0) {
      it = terms.erase(it);
      continue;
    }
    const int d = total_degree(it->first);
    if (first) {
      degree_ = d;
      first = false;
    } else if (d != degree_) {
      throw InvalidInput("polynomial is not homogeneous (degrees " + std::to_string(degree_) +
                         " and " + std::to_string(d) + ")");
    }
    ++it;
  }
  terms_ = std::move(terms);
}

HPoly HPoly::monomial(RingPtr ring, const Exponents& e, Scalar coeff) {
  TermMap t;
  t.emplace(e, std::move(coeff));
  return HPoly(std::move(ring), std::move(t));
}

HPoly HPoly::derivative(std::size_t var) const {
  TermMap out;
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    f[var] -= 1;
    out[f] += c * e[var];
  }
  HPoly p(ring_, std::move(out));
  if (p.is_zero()) p.degree_ = std::max(0, degree_ - 1);
  return p;
}

HPoly HPoly::operator*(const HPoly& other) const {
  TermMap out;
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : other.terms_) {
      Exponents e(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) e[i] = a[i] + b[i];
      out[e] += ca * cb;
    }
  }
  HPoly p(ring_, std::move(out));
  if (p.is_zero()) p.degree_ = degree_ + other.degree_;
  return p;
}

HPoly HPoly::operator+(const HPoly& other) const {
  if (!is_zero() && !other.is_zero() && degree_ != other.degree_) {
    throw InvalidInput("sum of forms of different degrees");
  }
  TermMap out = terms_;
  for (const auto& [e, c] : other.terms_) out[e] += c;
  HPoly p(ring_, std::move(out));
  if (p.is_zero()) p.degree_ = is_zero() ? other.degree_ : degree_;
  return p;
}

HPoly HPoly::operator-(const HPoly& other) const { return *this + other.scaled(-1); }

HPoly HPoly::scaled(const Scalar& c) const {
  TermMap out;
  if (sgn(c) != 0) {
    for (const auto& [e, v] : terms_) out.emplace(e, v * c);
  }
  HPoly p(ring_, std::move(out));
  p.degree_ = degree_;
  return p;
}

HPoly HPoly::linear_substitution(const std::vector<std::vector<Scalar>>& m) const {
  const std::size_t n = ring_->size();
  std::vector<HPoly> images;
  for (std::size_t i = 0; i < n; ++i) {
    TermMap t;
    for (std::size_t j = 0; j < n; ++j) {
      Exponents e(n, 0);
      e[j] = 1;
      if (sgn(m.at(i).at(j)) != 0) t.emplace(e, m[i][j]);
    }
    HPoly img(ring_, std::move(t));
    img.degree_ = 1;
    images.push_back(std::move(img));
  }
  HPoly result(ring_, degree_);
  for (const auto& [e, c] : terms_) {
    HPoly term(ring_, 0);
    term = HPoly::monomial(ring_, Exponents(n, 0), c);
    for (std::size_t i = 0; i < n; ++i) {
      for (int k = 0; k < e[i]; ++k) term = term * images[i];
    }
    result = result + term;
  }
  return result;
}

std::string HPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Scalar coeff = c;
    if (!first) {
      os << (sgn(coeff) < 0 ? " - " : " + ");
      coeff = abs(coeff);
    } else if (sgn(coeff) < 0) {
      os << "-";
      coeff = abs(coeff);
    }
    first = false;
    const bool constant = total_degree(e) == 0;
    bool wrote = false;
    if (coeff != 1 || constant) {
      os << coeff.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << ring_->name(i);
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser. Works on non-homogeneous term maps and checks homogeneity at the end.

namespace {

using Poly = std::map<Exponents, Scalar>;

constexpr int kMaxPower = 512;

class Parser {
 public:
  Parser(std::string_view text, const RingContext& ring) : text_(text), ring_(ring) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool starts_factor() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return c == '(' || std::isdigit(static_cast<unsigned char>(c)) ||
           std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  Poly constant(const Scalar& c) const {
    Poly p;
    if (sgn(c) != 0) p.emplace(Exponents(ring_.size(), 0), c);
    return p;
  }

  static void clean(Poly& p) {
    for (auto it = p.begin(); it != p.end();) {
      it = sgn(it->second) == 0 ? p.erase(it) : std::next(it);
    }
  }

  static Poly add(Poly a, const Poly& b, int sign) {
    for (const auto& [e, c] : b) a[e] += sign > 0 ? c : Scalar(-c);
    clean(a);
    return a;
  }

  static Poly mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a) {
      for (const auto& [eb, cb] : b) {
        Exponents e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out[e] += ca * cb;
      }
    }
    clean(out);
    return out;
  }

  Poly expr() {
    Poly acc;
    bool first = true;
    for (;;) {
      int sign = 1;
      skip_ws();
      if (peek('+') || peek('-')) {
        sign = text_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      acc = add(std::move(acc), term(), sign);
      first = false;
    }
    return acc;
  }

  Poly term() {
    Poly acc = power();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc = mul(acc, power());
      } else if (starts_factor()) {
        acc = mul(acc, power());
      } else {
        break;
      }
    }
    return acc;
  }

  Poly power() {
    Poly base = primary();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      const std::size_t start = pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("expected a nonnegative integer exponent after '^'");
      }
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 4 || std::stoi(digits) > kMaxPower) {
        pos_ = start;
        fail("exponent too large");
      }
      const int k = std::stoi(digits);
      Poly out = constant(1);
      for (int i = 0; i < k; ++i) out = mul(out, base);
      return out;
    }
    return base;
  }

  Poly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '-' || c == '+') {
      ++pos_;
      Poly inner = power();
      return c == '-' ? add(Poly{}, inner, -1) : inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return variable();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  Poly number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    mpz_class num(std::string(text_.substr(start, pos_ - start)));
    mpz_class den = 1;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      skip_ws();
      const std::size_t dstart = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (dstart == pos_) fail("expected an integer denominator after '/'");
      den = mpz_class(std::string(text_.substr(dstart, pos_ - dstart)));
      if (den == 0) {
        pos_ = dstart;
        fail("zero denominator");
      }
    }
    Scalar q(num, den);
    q.canonicalize();
    return constant(q);
  }

  Poly variable() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    const long idx = ring_.index_of(name);
    if (idx < 0) {
      pos_ = start;
      fail("unknown variable '" + std::string(name) + "'");
    }
    Exponents e(ring_.size(), 0);
    e[static_cast<std::size_t>(idx)] = 1;
    Poly p;
    p.emplace(e, 1);
    return p;
  }

  std::string_view text_;
  const RingContext& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

HPoly parse_homogeneous(std::string_view text, const RingPtr& ring) {
  Parser parser(text, *ring);
  const Poly p = parser.parse();
  TermMap terms(p.begin(), p.end());
  return HPoly(ring, std::move(terms));
}

}  // namespace kcone
