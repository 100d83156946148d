#include "holo/formulas.hpp"

#include <cmath>
#include <sstream>

#include "holo/errors.hpp"

namespace holo::formulas {
namespace {

using namespace std::complex_literals;

constexpr Pair P13 = Pair::p13;
constexpr Pair P14 = Pair::p14;
constexpr Pair P23 = Pair::p23;
constexpr Pair P24 = Pair::p24;

constexpr Subspace kPlus = Subspace::plus;
constexpr Subspace kMinus = Subspace::minus;

// sin/cos/tan/cot of (multiple * theta_pair), raised to `power`.
TrigFactor S(Pair p, int multiple = 1, int power = 1) { return {Trig::sin, p, multiple, power}; }
TrigFactor C(Pair p, int multiple = 1, int power = 1) { return {Trig::cos, p, multiple, power}; }
TrigFactor Tan(Pair p) { return {Trig::tan, p, 1, 1}; }
TrigFactor Cot(Pair p) { return {Trig::cot, p, 1, 1}; }
TrigFactor S2(Pair p) { return S(p, 1, 2); }  // sin^2
TrigFactor C2(Pair p) { return C(p, 1, 2); }  // cos^2

// Phase arguments are integer combinations of (phi13, phi14, phi23, phi24).
PhaseFactor Exp(int a, int b, int c, int d) { return {PhaseFactor::Kind::exp, {a, b, c, d}}; }
PhaseFactor Cos(int a, int b, int c, int d) { return {PhaseFactor::Kind::cos, {a, b, c, d}}; }
PhaseFactor Sin(int a, int b, int c, int d) { return {PhaseFactor::Kind::sin, {a, b, c, d}}; }

Term T(Complex coefficient, std::vector<TrigFactor> trig = {}) {
  return {coefficient, {}, std::move(trig)};
}
Term T(Complex coefficient, PhaseFactor phase, std::vector<TrigFactor> trig = {}) {
  return {coefficient, phase, std::move(trig)};
}

const Entry kZero{};
Entry E(std::initializer_list<Term> terms) { return Entry(terms); }

char sign_char(Subspace s) { return s == kPlus ? '+' : '-'; }

Formula connection(Subspace s, CoordinateIndex c, Term prefactor, Entry e11, Entry e12, Entry e21,
                   Entry e22, bool partner = false) {
  Formula f;
  f.id = std::string("A") + sign_char(s) + "_" + name(c);
  f.kind = Kind::connection;
  f.subspace = s;
  f.mu = c;
  f.prefactor = std::move(prefactor);
  f.entries = {std::move(e11), std::move(e12), std::move(e21), std::move(e22)};
  f.lower_is_partner = partner;
  return f;
}

Formula zero_connection(Subspace s, CoordinateIndex c) {
  return connection(s, c, T(1.0), kZero, kZero, kZero, kZero);
}

Formula field(Subspace s, CoordinateIndex mu, CoordinateIndex nu, Term prefactor, Entry e11,
              Entry e12, Entry e21, Entry e22, bool partner = false) {
  Formula f;
  f.id = std::string("F") + sign_char(s) + "_" + name(mu) + "_" + name(nu);
  f.kind = Kind::field_strength;
  f.subspace = s;
  f.mu = mu;
  f.nu = nu;
  f.prefactor = std::move(prefactor);
  f.entries = {std::move(e11), std::move(e12), std::move(e21), std::move(e22)};
  f.lower_is_partner = partner;
  return f;
}

Formula zero_field(Subspace s, CoordinateIndex mu, CoordinateIndex nu) {
  return field(s, mu, nu, T(1.0), kZero, kZero, kZero, kZero);
}

// A single nonzero (2,2) entry: prefactor * diag(0, value).
Entry D(double value) { return E({T(value)}); }

std::vector<Formula> build_connection_table() {
  const auto th13 = theta(P13), th14 = theta(P14), th23 = theta(P23), th24 = theta(P24);
  const auto ph13 = phi(P13), ph14 = phi(P14), ph23 = phi(P23), ph24 = phi(P24);

  std::vector<Formula> t;

  t.push_back(connection(kPlus, th13, T(1.0, {S(P23), C(P14), C(P24)}),
                         kZero,
                         E({T(-1.0, Exp(1, 0, -1, 0))}),
                         E({T(1.0, Exp(-1, 0, 1, 0))}),
                         E({T(2.0i, Sin(1, -1, -1, 1), {Tan(P14), S(P24)})})));
  t.push_back(connection(kMinus, th13, T(1.0, {S(P14), C(P23), C(P24)}),
                         kZero,
                         E({T(-1.0, Exp(-1, 1, 0, 0))}),
                         E({T(1.0, Exp(1, -1, 0, 0))}),
                         E({T(2.0i, Sin(-1, 1, 1, -1), {Tan(P23), S(P24)})})));

  t.push_back(connection(kPlus, th14, T(1.0, {S(P24)}),
                         kZero,
                         E({T(-1.0, Exp(0, 1, 0, -1))}),
                         E({T(1.0, Exp(0, -1, 0, 1))}),
                         kZero));
  t.push_back(zero_connection(kMinus, th14));

  t.push_back(zero_connection(kPlus, th23));
  t.push_back(connection(kMinus, th23, T(1.0, {S(P24)}),
                         kZero,
                         E({T(-1.0, Exp(0, 0, -1, 1))}),
                         E({T(1.0, Exp(0, 0, 1, -1))}),
                         kZero));

  t.push_back(zero_connection(kPlus, th24));
  t.push_back(zero_connection(kMinus, th24));

  t.push_back(connection(
      kPlus, ph13, T(1.0),
      E({T(-1.0i, {S2(P13), C2(P14)})}),
      E({T(-0.5i, Exp(1, 0, -1, 0), {S(P13, 2), S(P23), C(P14), C(P24)}),
         T(0.5i, Exp(0, -1, 0, 1), {S2(P13), S(P14, 2), S(P24)})}),
      kZero,
      E({T(1.0i, {S2(P13), S2(P23), C2(P24)}),
         T(-1.0i, {S2(P13), S2(P24), S2(P14)}),
         T(0.5i, Cos(-1, 1, 1, -1), {S(P13, 2), S(P14), S(P23), S(P24, 2)})}),
      /*partner=*/true));
  t.push_back(connection(
      kMinus, ph13, T(1.0),
      E({T(1.0i, {S2(P13), C2(P23)})}),
      E({T(-0.5i, Exp(0, 0, -1, 1), {S2(P13), S(P23, 2), S(P24)}),
         T(0.5i, Exp(-1, 1, 0, 0), {S(P13, 2), S(P14), C(P23), C(P24)})}),
      kZero,
      E({T(1.0i, {S2(P13), S2(P23), S2(P24)}),
         T(-1.0i, {S2(P13), S2(P14), C2(P24)}),
         T(-0.5i, Cos(1, -1, -1, 1), {S(P13, 2), S(P14), S(P23), S(P24, 2)})}),
      /*partner=*/true));

  t.push_back(connection(kPlus, ph14, T(1.0i, {S2(P14)}),
                         D(-1.0),
                         E({T(-1.0, Exp(0, 1, 0, -1), {Cot(P14), S(P24)})}),
                         E({T(-1.0, Exp(0, -1, 0, 1), {Cot(P14), S(P24)})}),
                         E({T(1.0, {S2(P24)})})));
  t.push_back(connection(kMinus, ph14, T(1.0i, {S2(P14), C2(P24)}), kZero, kZero, kZero, D(1.0)));

  t.push_back(connection(kPlus, ph23, T(1.0i, {S2(P23), C2(P24)}), kZero, kZero, kZero, D(-1.0)));
  t.push_back(connection(kMinus, ph23, T(1.0i, {S2(P23)}),
                         D(1.0),
                         E({T(1.0, Exp(0, 0, -1, 1), {Cot(P23), S(P24)})}),
                         E({T(1.0, Exp(0, 0, 1, -1), {Cot(P23), S(P24)})}),
                         E({T(-1.0, {S2(P24)})})));

  t.push_back(connection(kPlus, ph24, T(1.0i, {S2(P24)}), kZero, kZero, kZero, D(-1.0)));
  t.push_back(connection(kMinus, ph24, T(1.0i, {S2(P24)}), kZero, kZero, kZero, D(1.0)));

  return t;
}

std::vector<Formula> build_field_table() {
  const auto th13 = theta(P13), th14 = theta(P14), th23 = theta(P23), th24 = theta(P24);
  const auto ph13 = phi(P13), ph14 = phi(P14), ph23 = phi(P23), ph24 = phi(P24);

  std::vector<Formula> t;

  // (theta24, phi_ij): commuting on both subspaces.
  t.push_back(field(
      kPlus, th24, ph13, T(1.0),
      kZero,
      E({T(0.5i, Exp(1, 0, -1, 0), {S(P13, 2), S(P23), C(P14), S(P24)}),
         T(0.5i, Exp(0, -1, 0, 1), {S(P14, 2), S2(P13), C(P24)})}),
      kZero,
      E({T(-1.0i, {S(P13), S(P24, 2), S2(P14)}),
         T(-1.0i, {S(P13), S(P24, 2), S2(P23)}),
         T(1.0i, Cos(-1, 1, 1, -1), {S(P13, 2), S(P14), S(P23), C(P24, 2)})}),
      /*partner=*/true));
  t.push_back(field(
      kMinus, th24, ph13, T(1.0),
      kZero,
      E({T(-0.5i, Exp(0, 0, 1, -1), {S2(P13), S(P23, 2), C(P24)}),
         T(-0.5i, Exp(1, -1, 0, 0), {S(P13, 2), S(P14), C(P23), S(P24)})}),
      kZero,
      E({T(1.0i, {S2(P13), S(P24, 2), S2(P23)}),
         T(1.0i, {S2(P13), S(P24, 2), S2(P14)}),
         T(-1.0i, Cos(1, -1, -1, 1), {S(P13, 2), S(P14), S(P23), C(P24, 2)})}),
      /*partner=*/true));

  t.push_back(field(kPlus, th24, ph14, T(1.0),
                    kZero,
                    E({T(-0.5i, Exp(0, 1, 0, -1), {S(P14, 2), C(P24)})}),
                    E({T(-0.5i, Exp(0, -1, 0, 1), {S(P14, 2), C(P24)})}),
                    E({T(1.0i, {S2(P14), S(P24, 2)})})));
  t.push_back(field(kMinus, th24, ph14, T(-1.0i, {S2(P14), S(P24, 2)}), kZero, kZero, kZero, D(1.0)));

  t.push_back(field(kPlus, th24, ph23, T(1.0i, {S2(P23), S(P24, 2)}), kZero, kZero, kZero, D(1.0)));
  t.push_back(field(kMinus, th24, ph23, T(1.0),
                    kZero,
                    E({T(0.5i, Exp(0, 0, -1, 1), {S(P23, 2), C(P24)})}),
                    E({T(0.5i, Exp(0, 0, 1, -1), {S(P23, 2), C(P24)})}),
                    E({T(-1.0i, {S2(P23), S(P24, 2)})})));

  t.push_back(field(kPlus, th24, ph24, T(-1.0i, {S(P24, 2)}), kZero, kZero, kZero, D(1.0)));
  t.push_back(field(kMinus, th24, ph24, T(1.0i, {S(P24, 2)}), kZero, kZero, kZero, D(1.0)));

  // Commuting on the plus subspace only.
  t.push_back(field(kPlus, th23, ph13, T(0.5i, {C(P24), C(P23), S(P13, 2)}),
                    kZero,
                    E({T(-1.0, Exp(1, 0, -1, 0), {C(P14)})}),
                    E({T(-1.0, Exp(-1, 0, 1, 0), {C(P14)})}),
                    E({T(2.0, {Tan(P13), S(P23)}),
                       T(2.0, Cos(-1, 1, 1, -1), {S(P14), S(P24)})})));
  t.push_back(field(kPlus, th23, ph23, T(-1.0i, {C2(P24), S(P23, 2)}), kZero, kZero, kZero, D(1.0)));
  t.push_back(zero_field(kPlus, th23, ph14));
  t.push_back(zero_field(kPlus, th23, ph24));

  // Commuting on the minus subspace only.
  t.push_back(field(kMinus, th14, ph13, T(-0.5i, {S(P13, 2), C(P14), C(P24)}),
                    kZero,
                    E({T(-1.0, Exp(-1, 1, 0, 0), {C(P23)})}),
                    E({T(-1.0, Exp(1, -1, 0, 0), {C(P23)})}),
                    E({T(2.0, {Tan(P13), S(P14), C(P24)}),
                       T(2.0, Cos(1, -1, -1, 1), {S(P23), S(P24)})})));
  t.push_back(field(kMinus, th14, ph14, T(1.0i, {C2(P24), S(P14, 2)}), kZero, kZero, kZero, D(1.0)));
  t.push_back(zero_field(kMinus, th14, ph23));
  t.push_back(zero_field(kMinus, th14, ph24));

  // (theta, theta) components.
  t.push_back(field(kPlus, th13, th24, T(1.0, {S(P23), C(P14)}),
                    kZero,
                    E({T(-1.0, Exp(1, 0, -1, 0), {S(P24)})}),
                    E({T(1.0, Exp(-1, 0, 1, 0), {S(P24)})}),
                    E({T(-2.0i, Sin(1, -1, -1, 1), {Tan(P14), C(P24, 2)})})));
  t.push_back(field(kMinus, th13, th24, T(1.0, {S(P14), C(P23)}),
                    kZero,
                    E({T(-1.0, Exp(-1, 1, 0, 0), {S(P24)})}),
                    E({T(1.0, Exp(1, -1, 0, 0), {S(P24)})}),
                    E({T(-2.0i, Sin(-1, 1, 1, -1), {Tan(P23), C(P24, 2)})})));
  t.push_back(zero_field(kPlus, th14, th23));
  t.push_back(zero_field(kMinus, th14, th23));
  t.push_back(field(kPlus, th14, th24, T(-1.0, {C(P24)}),
                    kZero,
                    E({T(-1.0, Exp(0, 1, 0, -1))}),
                    E({T(1.0, Exp(0, -1, 0, 1))}),
                    kZero));
  t.push_back(zero_field(kMinus, th14, th13));
  t.push_back(zero_field(kPlus, th23, th24));
  t.push_back(field(kMinus, th23, th24, T(-1.0, {C(P24)}),
                    kZero,
                    E({T(-1.0, Exp(0, 0, -1, 1))}),
                    E({T(1.0, Exp(0, 0, 1, -1))}),
                    kZero));
  t.push_back(field(kPlus, th13, th23, T(-1.0, {C(P23), C(P14), C(P24)}),
                    kZero,
                    E({T(-1.0, Exp(1, 0, -1, 0))}),
                    E({T(1.0, Exp(-1, 0, 1, 0))}),
                    E({T(2.0i, Sin(1, -1, -1, 1), {Tan(P14), S(P24)})})));
  t.push_back(field(kMinus, th13, th14, T(-1.0, {C(P14), C(P23), C(P24)}),
                    kZero,
                    E({T(-1.0, Exp(-1, 1, 0, 0))}),
                    E({T(1.0, Exp(1, -1, 0, 0))}),
                    E({T(2.0i, Sin(-1, 1, 1, -1), {Tan(P23), S(P24)})})));

  return t;
}

std::vector<Formula> build_table() {
  auto t = build_connection_table();
  auto f = build_field_table();
  t.insert(t.end(), std::make_move_iterator(f.begin()), std::make_move_iterator(f.end()));
  return t;
}

double trig_value(const TrigFactor& f, const GrassmannianPoint& p) {
  const double x = f.multiple * p.theta(f.pair);
  double v = 0.0;
  switch (f.fn) {
    case Trig::sin: v = std::sin(x); break;
    case Trig::cos: v = std::cos(x); break;
    case Trig::tan: {
      const double c = std::cos(x);
      if (std::abs(c) < kPoleEpsilon) {
        raise(ErrorKind::pole_at_point,
              "tan(theta" + name(theta(f.pair)).substr(5) + ") is singular at this point");
      }
      v = std::sin(x) / c;
      break;
    }
    case Trig::cot: {
      const double s = std::sin(x);
      if (std::abs(s) < kPoleEpsilon) {
        raise(ErrorKind::pole_at_point,
              "cot(theta" + name(theta(f.pair)).substr(5) + ") is singular at this point");
      }
      v = std::cos(x) / s;
      break;
    }
  }
  double out = 1.0;
  for (int k = 0; k < f.power; ++k) out *= v;
  return out;
}

Complex phase_value(const PhaseFactor& ph, const GrassmannianPoint& p) {
  double arg = 0.0;
  for (int k = 0; k < 4; ++k) arg += ph.k[k] * p.phi(static_cast<Pair>(k));
  switch (ph.kind) {
    case PhaseFactor::Kind::none: return 1.0;
    case PhaseFactor::Kind::exp: return std::polar(1.0, arg);
    case PhaseFactor::Kind::cos: return std::cos(arg);
    case PhaseFactor::Kind::sin: return std::sin(arg);
  }
  return 1.0;
}

Complex term_value(const Term& t, const GrassmannianPoint& p) {
  Complex v = t.coefficient * phase_value(t.phase, p);
  for (const auto& f : t.trig) v *= trig_value(f, p);
  return v;
}

Complex entry_value(const Entry& e, const GrassmannianPoint& p) {
  Complex v = 0.0;
  for (const auto& t : e) v += term_value(t, p);
  return v;
}

std::string pair_digits(Pair p) {
  const auto [i, j] = levels(p);
  return std::to_string(i) + std::to_string(j);
}

std::string describe_term(const Term& t) {
  std::ostringstream out;
  out << "(" << t.coefficient.real() << (t.coefficient.imag() < 0 ? "" : "+")
      << t.coefficient.imag() << "i)";
  if (t.phase.kind != PhaseFactor::Kind::none) {
    static constexpr const char* kNames[] = {"", "exp(i", "cos(", "sin("};
    out << " " << kNames[static_cast<int>(t.phase.kind)];
    bool first = true;
    for (int k = 0; k < 4; ++k) {
      const int c = t.phase.k[k];
      if (c == 0) continue;
      out << (c < 0 ? "-" : (first ? "" : "+"));
      if (std::abs(c) != 1) out << std::abs(c);
      out << "phi" << pair_digits(static_cast<Pair>(k));
      first = false;
    }
    out << ")";
  }
  for (const auto& f : t.trig) {
    static constexpr const char* kFn[] = {"sin", "cos", "tan", "cot"};
    out << " " << kFn[static_cast<int>(f.fn)];
    if (f.power != 1) out << "^" << f.power;
    out << "(";
    if (f.multiple != 1) out << f.multiple;
    out << "theta" << pair_digits(f.pair) << ")";
  }
  return out.str();
}

std::string describe_entry(const Entry& e) {
  if (e.empty()) return "0";
  std::string out;
  for (const auto& t : e) {
    if (!out.empty()) out += " + ";
    out += describe_term(t);
  }
  return out;
}

}  // namespace

bool Formula::identically_zero() const {
  for (const auto& e : entries) {
    if (!e.empty()) return false;
  }
  return true;
}

const std::vector<Formula>& table() {
  static const std::vector<Formula> kTable = build_table();
  return kTable;
}

const Formula* find_connection(CoordinateIndex c, Subspace s) {
  for (const auto& f : table()) {
    if (f.kind == Kind::connection && f.mu == c && f.subspace == s) return &f;
  }
  return nullptr;
}

std::optional<FieldLookup> find_field(CoordinateIndex mu, CoordinateIndex nu, Subspace s) {
  for (const auto& f : table()) {
    if (f.kind != Kind::field_strength || f.subspace != s) continue;
    if (f.mu == mu && f.nu == nu) return FieldLookup{&f, 1.0};
    if (f.mu == nu && f.nu == mu) return FieldLookup{&f, -1.0};
  }
  return std::nullopt;
}

CMat2 evaluate(const Formula& f, const GrassmannianPoint& p) {
  CMat2 m = CMat2::Zero();
  if (f.identically_zero()) return m;
  const Complex pre = term_value(f.prefactor, p);
  m(0, 0) = entry_value(f.entries[0], p);
  m(0, 1) = entry_value(f.entries[1], p);
  m(1, 0) = f.lower_is_partner ? -std::conj(m(0, 1)) : entry_value(f.entries[2], p);
  m(1, 1) = entry_value(f.entries[3], p);
  return pre * m;
}

std::string describe(const Formula& f) {
  std::ostringstream out;
  out << f.id << " = " << describe_term(f.prefactor) << " * [[" << describe_entry(f.entries[0])
      << ", " << describe_entry(f.entries[1]) << "], ["
      << (f.lower_is_partner ? std::string("-conj(e12)") : describe_entry(f.entries[2])) << ", "
      << describe_entry(f.entries[3]) << "]]";
  return out.str();
}

}  // namespace holo::formulas
