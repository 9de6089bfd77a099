#include "asymp/trig_poly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <tuple>

#include "asymp/errors.hpp"

namespace asymp {

namespace {

auto slot(const TrigTerm& t) { return std::tuple(t.t_power, t.harmonic, t.kind == Kind::sine); }

void check_frequency(double w) {
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw std::invalid_argument("TrigPoly: base frequency must be positive and finite");
  }
}

void require_same_frequency(const TrigPoly& a, const TrigPoly& b) {
  const double wa = a.base_frequency();
  const double wb = b.base_frequency();
  if (std::abs(wa - wb) > 1e-12 * std::max(wa, wb)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "base frequency mismatch: " << wa << " vs " << wb;
    throw FrequencyMismatch(msg.str());
  }
}

// Product of two single-harmonic factors as signed pairs (harmonic, kind, weight).
struct HarmonicPart {
  int harmonic;
  Kind kind;
  double weight;
};

// sin(-n x) = -sin(n x), cos(-n x) = cos(n x)
TrigTerm fold_negative(double coeff, unsigned t_power, int harmonic, Kind kind) {
  if (harmonic < 0 && kind == Kind::sine) coeff = -coeff;
  return TrigTerm{coeff, t_power, static_cast<unsigned>(std::abs(harmonic)), kind};
}

void product_to_sum(const TrigTerm& x, const TrigTerm& y, std::vector<TrigTerm>& out) {
  const int m = static_cast<int>(x.harmonic);
  const int n = static_cast<int>(y.harmonic);
  const double c = x.coeff * y.coeff;
  const unsigned k = x.t_power + y.t_power;
  std::array<HarmonicPart, 2> parts{};
  if (x.kind == Kind::cosine && y.kind == Kind::cosine) {
    parts = {{{m - n, Kind::cosine, 0.5}, {m + n, Kind::cosine, 0.5}}};
  } else if (x.kind == Kind::sine && y.kind == Kind::sine) {
    parts = {{{m - n, Kind::cosine, 0.5}, {m + n, Kind::cosine, -0.5}}};
  } else if (x.kind == Kind::sine) {
    // sin(m) cos(n)
    parts = {{{m + n, Kind::sine, 0.5}, {m - n, Kind::sine, 0.5}}};
  } else {
    // cos(m) sin(n)
    parts = {{{m + n, Kind::sine, 0.5}, {m - n, Kind::sine, -0.5}}};
  }
  for (const auto& p : parts) out.push_back(fold_negative(c * p.weight, k, p.harmonic, p.kind));
}

}  // namespace

double TrigTerm::evaluate(double t, double base_frequency) const {
  const double arg = static_cast<double>(harmonic) * base_frequency * t;
  const double trig = kind == Kind::cosine ? std::cos(arg) : std::sin(arg);
  return coeff * std::pow(t, static_cast<double>(t_power)) * trig;
}

TrigPoly::TrigPoly(double base_frequency) : omega_(base_frequency) { check_frequency(omega_); }

TrigPoly::TrigPoly(double base_frequency, std::vector<TrigTerm> terms)
    : omega_(base_frequency), terms_(std::move(terms)) {
  check_frequency(omega_);
  normalize();
}

TrigPoly TrigPoly::constant(double base_frequency, double value) {
  return TrigPoly(base_frequency, {TrigTerm{value, 0, 0, Kind::cosine}});
}

TrigPoly TrigPoly::cosine(double base_frequency, double coeff, unsigned harmonic) {
  return TrigPoly(base_frequency, {TrigTerm{coeff, 0, harmonic, Kind::cosine}});
}

TrigPoly TrigPoly::sine(double base_frequency, double coeff, unsigned harmonic) {
  return TrigPoly(base_frequency, {TrigTerm{coeff, 0, harmonic, Kind::sine}});
}

void TrigPoly::normalize() {
  for (const auto& t : terms_) {
    if (!std::isfinite(t.coeff)) throw NumericError("TrigPoly: non-finite coefficient");
  }
  std::erase_if(terms_, [](const TrigTerm& t) { return t.harmonic == 0 && t.kind == Kind::sine; });
  std::sort(terms_.begin(), terms_.end(),
            [](const TrigTerm& a, const TrigTerm& b) { return slot(a) < slot(b); });
  std::vector<TrigTerm> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && slot(merged.back()) == slot(t)) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  double largest = 0.0;
  for (const auto& t : merged) largest = std::max(largest, std::abs(t.coeff));
  const double cut = kPruneTolerance * largest;
  std::erase_if(merged, [cut](const TrigTerm& t) { return t.coeff == 0.0 || std::abs(t.coeff) < cut; });
  terms_ = std::move(merged);
}

double TrigPoly::coefficient(unsigned t_power, unsigned harmonic, Kind kind) const {
  const TrigTerm probe{0.0, t_power, harmonic, kind};
  auto it = std::lower_bound(terms_.begin(), terms_.end(), probe,
                             [](const TrigTerm& a, const TrigTerm& b) { return slot(a) < slot(b); });
  if (it != terms_.end() && slot(*it) == slot(probe)) return it->coeff;
  return 0.0;
}

double TrigPoly::operator()(double t) const {
  double sum = 0.0;
  for (const auto& term : terms_) sum += term.evaluate(t, omega_);
  return sum;
}

TrigPoly TrigPoly::with_base_frequency(double base_frequency) const {
  return TrigPoly(base_frequency, terms_);
}

TrigPoly TrigPoly::normalized() const { return TrigPoly(omega_, terms_); }

double TrigPoly::scale() const {
  double largest = 0.0;
  for (const auto& t : terms_) largest = std::max(largest, std::abs(t.coeff));
  return largest;
}

std::string TrigPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  out.precision(17);
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) out << " + ";
    first = false;
    out << t.coeff << " * t^" << t.t_power << " * " << (t.kind == Kind::cosine ? "cos" : "sin") << '('
        << t.harmonic << "*w*t)";
  }
  return out.str();
}

TrigPoly TrigPoly::operator-() const { return -1.0 * *this; }

TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
  require_same_frequency(a, b);
  std::vector<TrigTerm> terms(a.terms_.begin(), a.terms_.end());
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return TrigPoly(a.omega_, std::move(terms));
}

TrigPoly operator-(const TrigPoly& a, const TrigPoly& b) { return a + (-b); }

TrigPoly operator*(double s, const TrigPoly& a) {
  std::vector<TrigTerm> terms(a.terms_.begin(), a.terms_.end());
  for (auto& t : terms) t.coeff *= s;
  return TrigPoly(a.omega_, std::move(terms));
}

bool approx_equal(const TrigPoly& a, const TrigPoly& b, double tol) {
  if (std::abs(a.base_frequency() - b.base_frequency()) > 1e-12 * a.base_frequency()) return false;
  std::vector<TrigTerm> terms(a.terms().begin(), a.terms().end());
  for (auto t : b.terms()) {
    t.coeff = -t.coeff;
    terms.push_back(t);
  }
  // Merge without pruning so that cancellation residue is visible.
  std::sort(terms.begin(), terms.end(), [](const TrigTerm& x, const TrigTerm& y) { return slot(x) < slot(y); });
  for (std::size_t i = 0; i < terms.size();) {
    double sum = 0.0;
    std::size_t j = i;
    for (; j < terms.size() && slot(terms[j]) == slot(terms[i]); ++j) sum += terms[j].coeff;
    if (std::abs(sum) > tol) return false;
    i = j;
  }
  return true;
}

TrigPoly multiply(const TrigPoly& a, const TrigPoly& b) {
  require_same_frequency(a, b);
  std::vector<TrigTerm> out;
  out.reserve(2 * a.terms().size() * b.terms().size());
  for (const auto& x : a.terms()) {
    for (const auto& y : b.terms()) product_to_sum(x, y, out);
  }
  return TrigPoly(a.base_frequency(), std::move(out));
}

TrigPoly power(const TrigPoly& a, unsigned n) {
  TrigPoly result = TrigPoly::constant(a.base_frequency(), 1.0);
  for (unsigned i = 0; i < n; ++i) result = multiply(result, a);
  return result;
}

TrigPoly differentiate(const TrigPoly& a, unsigned order) {
  if (order == 0) throw std::invalid_argument("differentiate: order must be positive");
  const double w = a.base_frequency();
  TrigPoly current = a;
  for (unsigned step = 0; step < order; ++step) {
    std::vector<TrigTerm> out;
    for (const auto& t : current.terms()) {
      if (t.t_power > 0) {
        out.push_back({t.coeff * t.t_power, t.t_power - 1, t.harmonic, t.kind});
      }
      if (t.harmonic > 0) {
        const double nw = t.harmonic * w;
        if (t.kind == Kind::cosine) {
          out.push_back({-t.coeff * nw, t.t_power, t.harmonic, Kind::sine});
        } else {
          out.push_back({t.coeff * nw, t.t_power, t.harmonic, Kind::cosine});
        }
      }
    }
    current = TrigPoly(w, std::move(out));
  }
  return current;
}

TrigPoly integrate_sine_kernel(const TrigPoly& f) {
  const double w = f.base_frequency();
  const double w2 = w * w;
  std::vector<TrigTerm> out;
  for (const auto& t : f.terms()) {
    if (t.t_power != 0) {
      throw CapabilityError("integrate_sine_kernel: inputs with t_power >= 1 are not supported");
    }
    const double c = t.coeff;
    const unsigned n = t.harmonic;
    if (n == 1) {
      if (t.kind == Kind::cosine) {
        // -(t / 2w) sin(wt)
        out.push_back({-c / (2.0 * w), 1, 1, Kind::sine});
      } else {
        // (t / 2w) cos(wt) - sin(wt) / 2w^2
        out.push_back({c / (2.0 * w), 1, 1, Kind::cosine});
        out.push_back({-c / (2.0 * w2), 0, 1, Kind::sine});
      }
      continue;
    }
    const double d = w2 * (1.0 - static_cast<double>(n) * n);
    if (t.kind == Kind::cosine) {
      // (cos wt - cos nwt) / (w^2 (1 - n^2))
      out.push_back({c / d, 0, 1, Kind::cosine});
      out.push_back({-c / d, 0, n, Kind::cosine});
    } else {
      // (n sin wt - sin nwt) / (w^2 (1 - n^2))
      out.push_back({c * n / d, 0, 1, Kind::sine});
      out.push_back({-c / d, 0, n, Kind::sine});
    }
  }
  return TrigPoly(w, std::move(out));
}

std::vector<TrigTerm> detect_secular(const TrigPoly& a) {
  std::vector<TrigTerm> out;
  for (const auto& t : a.terms()) {
    if (t.t_power >= 1) out.push_back(t);
  }
  return out;
}

}  // namespace asymp
