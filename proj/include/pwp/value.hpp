#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pwp {

using Complex = std::complex<double>;
using Integer = mpz_class;

// Immutable, shared amplitude vector. The amplitude sum is computed once at
// construction so that mean() is O(1).
class AmpVector {
 public:
  // Throws TypeMismatch when `amplitudes` is empty.
  explicit AmpVector(std::vector<Complex> amplitudes);

  std::size_t size() const noexcept { return data_->amplitudes.size(); }
  const Complex& operator[](std::size_t i) const { return data_->amplitudes[i]; }
  std::span<const Complex> amplitudes() const noexcept { return data_->amplitudes; }
  Complex sum() const noexcept { return data_->sum; }
  Complex mean() const noexcept { return data_->sum / static_cast<double>(size()); }

  friend bool operator==(const AmpVector& a, const AmpVector& b);

 private:
  struct Data {
    std::vector<Complex> amplitudes;
    Complex sum;
  };
  std::shared_ptr<const Data> data_;
};

struct FuncData;

// Closure over an index range [lower, upper).
class FuncValue {
 public:
  explicit FuncValue(std::shared_ptr<const FuncData> data) : data_(std::move(data)) {}
  const FuncData& data() const noexcept { return *data_; }

  friend bool operator==(const FuncValue& a, const FuncValue& b);

 private:
  std::shared_ptr<const FuncData> data_;
};

// Runtime datum. Booleans are the reals 0.0 and 1.0.
class Value {
 public:
  using Storage = std::variant<Integer, double, Complex, AmpVector, FuncValue>;

  Value() : storage_(Integer(0)) {}
  Value(Integer v) : storage_(std::move(v)) {}
  Value(long v) : storage_(Integer(v)) {}
  Value(int v) : storage_(Integer(v)) {}
  Value(double v) : storage_(v) {}
  Value(Complex v) : storage_(v) {}
  Value(AmpVector v) : storage_(std::move(v)) {}
  Value(FuncValue v) : storage_(std::move(v)) {}

  static Value boolean(bool b) { return Value(b ? 1.0 : 0.0); }

  bool is_int() const noexcept { return std::holds_alternative<Integer>(storage_); }
  bool is_real() const noexcept { return std::holds_alternative<double>(storage_); }
  bool is_complex() const noexcept { return std::holds_alternative<Complex>(storage_); }
  bool is_vector() const noexcept { return std::holds_alternative<AmpVector>(storage_); }
  bool is_func() const noexcept { return std::holds_alternative<FuncValue>(storage_); }
  bool is_numeric() const noexcept { return is_int() || is_real() || is_complex(); }

  const Integer& as_int() const;
  double as_real() const;
  const Complex& as_complex() const;
  const AmpVector& as_vector() const;
  const FuncValue& as_func() const;

  // Numeric promotions; throw TypeMismatch for vectors and functions.
  double to_real() const;  // rejects complex values with nonzero imaginary part
  Complex to_complex() const;
  // Int, or a Real holding an exact integer, narrowed to int64.
  std::int64_t to_index() const;

  std::string_view kind_name() const noexcept;
  const Storage& storage() const noexcept { return storage_; }

  // Structural identity (same alternative, same payload). The language's "="
  // operator is value_equal() in expr.hpp.
  friend bool operator==(const Value& a, const Value& b);

 private:
  Storage storage_;
};

std::string to_string(const Value& v);

// Variable environment. Lookup of an unbound name throws UnboundVariable.
class Env {
 public:
  using Map = std::map<std::string, Value, std::less<>>;

  Env() = default;
  Env(std::initializer_list<Map::value_type> init) : vars_(init) {}

  const Value& at(std::string_view name) const;
  const Value* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }

  void set(const std::string& name, Value v) { vars_.insert_or_assign(name, std::move(v)); }
  Env with(const std::string& name, Value v) const {
    Env copy = *this;
    copy.set(name, std::move(v));
    return copy;
  }

  std::size_t size() const noexcept { return vars_.size(); }
  Map::const_iterator begin() const { return vars_.begin(); }
  Map::const_iterator end() const { return vars_.end(); }

  friend bool operator==(const Env& a, const Env& b) { return a.vars_ == b.vars_; }

 private:
  Map vars_;
};

std::string to_string(const Env& env);

}  // namespace pwp
