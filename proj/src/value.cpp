#include "pwp/value.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "pwp/errors.hpp"
#include "pwp/expr.hpp"
#include "pwp/format.hpp"

namespace pwp {

AmpVector::AmpVector(std::vector<Complex> amplitudes) {
  if (amplitudes.empty()) throw TypeMismatch("amplitude vector must have length >= 1");
  Complex sum{0.0, 0.0};
  for (const auto& a : amplitudes) sum += a;
  data_ = std::make_shared<const Data>(Data{std::move(amplitudes), sum});
}

bool operator==(const AmpVector& a, const AmpVector& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->amplitudes == b.data_->amplitudes;
}

bool operator==(const FuncValue& a, const FuncValue& b) {
  if (a.data_ == b.data_) return true;
  const FuncData& x = *a.data_;
  const FuncData& y = *b.data_;
  return x.param == y.param && x.lower == y.lower && x.upper == y.upper && x.body == y.body &&
         x.captured == y.captured;
}

namespace {

[[noreturn]] void mismatch(std::string_view want, const Value& got) {
  throw TypeMismatch("expected " + std::string(want) + ", got " + std::string(got.kind_name()));
}

}  // namespace

const Integer& Value::as_int() const {
  if (!is_int()) mismatch("Int", *this);
  return std::get<Integer>(storage_);
}

double Value::as_real() const {
  if (!is_real()) mismatch("Real", *this);
  return std::get<double>(storage_);
}

const Complex& Value::as_complex() const {
  if (!is_complex()) mismatch("Complex", *this);
  return std::get<Complex>(storage_);
}

const AmpVector& Value::as_vector() const {
  if (!is_vector()) mismatch("AmpVector", *this);
  return std::get<AmpVector>(storage_);
}

const FuncValue& Value::as_func() const {
  if (!is_func()) mismatch("Func", *this);
  return std::get<FuncValue>(storage_);
}

double Value::to_real() const {
  if (is_int()) return std::get<Integer>(storage_).get_d();
  if (is_real()) return std::get<double>(storage_);
  if (is_complex()) {
    const auto& z = std::get<Complex>(storage_);
    if (z.imag() != 0.0) throw TypeMismatch("expected a real number, got " + to_string(*this));
    return z.real();
  }
  mismatch("number", *this);
}

Complex Value::to_complex() const {
  if (is_complex()) return std::get<Complex>(storage_);
  if (is_int() || is_real()) return {to_real(), 0.0};
  mismatch("number", *this);
}

std::int64_t Value::to_index() const {
  if (is_int()) {
    const auto& z = std::get<Integer>(storage_);
    if (!z.fits_slong_p()) throw IndexOutOfRange("index " + z.get_str() + " does not fit");
    return z.get_si();
  }
  if (is_real()) {
    double d = std::get<double>(storage_);
    if (std::floor(d) == d && std::abs(d) < 9.0e15) return static_cast<std::int64_t>(d);
  }
  mismatch("integer index", *this);
}

std::string_view Value::kind_name() const noexcept {
  switch (storage_.index()) {
    case 0: return "Int";
    case 1: return "Real";
    case 2: return "Complex";
    case 3: return "AmpVector";
    default: return "Func";
  }
}

bool operator==(const Value& a, const Value& b) { return a.storage_ == b.storage_; }

std::string to_string(const Value& v) {
  std::ostringstream os;
  if (v.is_int()) {
    os << v.as_int().get_str();
  } else if (v.is_real()) {
    os << format_sig(v.as_real());
  } else if (v.is_complex()) {
    os << format_complex(v.as_complex());
  } else if (v.is_vector()) {
    os << '[';
    const auto amps = v.as_vector().amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
      if (i) os << ", ";
      os << format_complex(amps[i]);
    }
    os << ']';
  } else {
    const FuncData& f = v.as_func().data();
    os << "<func " << f.param << " in " << f.lower << ".." << f.upper << '>';
  }
  return os.str();
}

const Value& Env::at(std::string_view name) const {
  if (const Value* v = find(name)) return *v;
  throw UnboundVariable(std::string(name));
}

const Value* Env::find(std::string_view name) const {
  auto it = vars_.find(name);
  return it == vars_.end() ? nullptr : &it->second;
}

std::string to_string(const Env& env) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : env) {
    if (!first) out += ", ";
    first = false;
    out += k + " = " + to_string(v);
  }
  return out + "}";
}

}  // namespace pwp
