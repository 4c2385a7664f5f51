// Copyright 2026 The magicscope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "magicscope/bitvec.hpp"
#include "magicscope/errors.hpp"

namespace magicscope {

/// Signed n-qubit Pauli operator i^phase * X^x * Z^z in symplectic form.
///
/// Qubit q (0-based) is the q-th character of the text form, read left to right.
/// All four phases are representable; Hermiticity (phase = |x & z| mod 2) is only
/// required where a string enters a MeasurementSet.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n) : x_(n), z_(n) {}
  PauliString(int phase, BitVector x, BitVector z) : phase_(normalize(phase)), x_(std::move(x)), z_(std::move(z)) {
    if (x_.size() != z_.size()) throw std::invalid_argument("PauliString: x and z lengths differ");
  }

  /// The Hermitian string with letters `letters` (one of I, X, Y, Z per qubit) and sign +1.
  static PauliString from_letters(std::string_view letters) {
    BitVector x(letters.size()), z(letters.size());
    int y_count = 0;
    for (std::size_t q = 0; q < letters.size(); ++q) {
      switch (letters[q]) {
        case 'I': break;
        case 'X': x.set(q); break;
        case 'Z': z.set(q); break;
        case 'Y':
          x.set(q);
          z.set(q);
          ++y_count;
          break;
        default: throw ParseError(std::string("invalid Pauli character '") + letters[q] + "'");
      }
    }
    return PauliString(y_count, std::move(x), std::move(z));
  }

  std::size_t num_qubits() const { return x_.size(); }
  int phase() const { return phase_; }
  const BitVector& xbits() const { return x_; }
  const BitVector& zbits() const { return z_; }

  std::size_t y_count() const { return and_popcount(x_, z_); }
  bool is_hermitian() const { return (static_cast<std::size_t>(phase_) + y_count()) % 2 == 0; }
  bool is_identity_up_to_phase() const { return x_.none() && z_.none(); }

  /// +1 or -1 relative to the letter form (I/X/Y/Z product with no prefactor).
  /// Throws for non-Hermitian strings.
  int sign() const {
    const int rel = normalize(phase_ - static_cast<int>(y_count() % 4));
    if (rel == 0) return 1;
    if (rel == 2) return -1;
    throw std::logic_error("PauliString::sign: non-Hermitian string");
  }

  /// Letter at qubit q.
  char letter(std::size_t q) const {
    const bool xq = x_.get(q), zq = z_.get(q);
    return xq ? (zq ? 'Y' : 'X') : (zq ? 'Z' : 'I');
  }
  std::string letters() const {
    std::string s(num_qubits(), 'I');
    for (std::size_t q = 0; q < num_qubits(); ++q) s[q] = letter(q);
    return s;
  }

  PauliString negated() const { return PauliString(phase_ + 2, x_, z_); }
  /// Same operator with sign +1 (Hermitian canonical form).
  PauliString unsigned_form() const { return PauliString(static_cast<int>(y_count() % 4), x_, z_); }

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    if (auto c = a.x_ <=> b.x_; c != 0) return c;
    if (auto c = a.z_ <=> b.z_; c != 0) return c;
    return a.phase_ <=> b.phase_;
  }

 private:
  static int normalize(int k) { return ((k % 4) + 4) % 4; }

  int phase_ = 0;
  BitVector x_;
  BitVector z_;
};

/// Parses `[+|-]` followed by letters in {I, X, Y, Z}. Y is encoded as i*X*Z.
inline PauliString parse_pauli(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) throw ParseError("empty Pauli string");
  PauliString p = PauliString::from_letters(text);
  return negative ? p.negated() : p;
}

/// Text form: optional "-", "i" or "-i" prefix followed by letters.
inline std::string format_pauli(const PauliString& p) {
  const int rel = ((p.phase() - static_cast<int>(p.y_count() % 4)) % 4 + 4) % 4;
  static constexpr const char* prefixes[] = {"", "i", "-", "-i"};
  return prefixes[rel] + p.letters();
}

inline std::ostream& operator<<(std::ostream& os, const PauliString& p) { return os << format_pauli(p); }

inline void require_same_width(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("Pauli strings act on different qubit counts (" + std::to_string(a.num_qubits()) +
                                " vs " + std::to_string(b.num_qubits()) + ")");
  }
}

/// Operator product a*b: phase i^(ka+kb) * (-1)^(za.xb), bits XOR.
inline PauliString multiply(const PauliString& a, const PauliString& b) {
  require_same_width(a, b);
  const int phase = a.phase() + b.phase() + (dot(a.zbits(), b.xbits()) ? 2 : 0);
  return PauliString(phase, a.xbits() ^ b.xbits(), a.zbits() ^ b.zbits());
}

/// Symplectic form xa.zb + xb.za == 0.
inline bool commutes(const PauliString& a, const PauliString& b) {
  require_same_width(a, b);
  return dot(a.xbits(), b.zbits()) == dot(b.xbits(), a.zbits());
}

/// +1 or -1 if `p` is +-identity, nullopt otherwise. A +-i multiple of the
/// identity can only come from multiplying anticommuting factors and throws.
inline std::optional<int> identity_sign(const PauliString& p) {
  if (!p.is_identity_up_to_phase()) return std::nullopt;
  if (p.phase() % 2 != 0) throw std::logic_error("identity_sign: product is an imaginary multiple of the identity");
  return p.phase() == 0 ? 1 : -1;
}

/// Embeds `p` into `n_prime` qubits, identity on the appended ones.
inline PauliString pad(const PauliString& p, std::size_t n_prime) {
  if (n_prime < p.num_qubits()) {
    throw std::invalid_argument("pad: target width " + std::to_string(n_prime) + " is smaller than " +
                                std::to_string(p.num_qubits()));
  }
  return PauliString(p.phase(), p.xbits().resized(n_prime), p.zbits().resized(n_prime));
}

/// Ordered list of m >= 1 Hermitian, non-identity Pauli strings of equal width.
/// Exact duplicates are rejected; a pair P, -P is allowed.
class MeasurementSet {
 public:
  MeasurementSet() = default;
  explicit MeasurementSet(std::vector<PauliString> paulis) : paulis_(std::move(paulis)) { validate(); }

  std::size_t size() const { return paulis_.size(); }
  std::size_t num_qubits() const { return paulis_.empty() ? 0 : paulis_.front().num_qubits(); }
  const PauliString& operator[](std::size_t i) const { return paulis_[i]; }
  const std::vector<PauliString>& paulis() const { return paulis_; }
  auto begin() const { return paulis_.begin(); }
  auto end() const { return paulis_.end(); }

  MeasurementSet padded(std::size_t n_prime) const {
    std::vector<PauliString> out;
    out.reserve(paulis_.size());
    for (const auto& p : paulis_) out.push_back(pad(p, n_prime));
    return MeasurementSet(std::move(out));
  }

  std::vector<std::string> to_strings() const {
    std::vector<std::string> out;
    for (const auto& p : paulis_) out.push_back(format_pauli(p));
    return out;
  }

 private:
  void validate() const {
    using Kind = MeasurementSetError::Kind;
    if (paulis_.empty()) throw MeasurementSetError(Kind::empty, 0, "measurement set is empty");
    const std::size_t n = paulis_.front().num_qubits();
    for (std::size_t i = 0; i < paulis_.size(); ++i) {
      const auto& p = paulis_[i];
      const std::string label = "measurement " + std::to_string(i + 1) + " (" + format_pauli(p) + ")";
      if (p.num_qubits() != n) {
        throw MeasurementSetError(Kind::width_mismatch, i, label + " has width " + std::to_string(p.num_qubits()) +
                                                               ", expected " + std::to_string(n));
      }
      if (!p.is_hermitian()) throw MeasurementSetError(Kind::non_hermitian, i, label + " is not Hermitian");
      if (p.is_identity_up_to_phase()) {
        throw MeasurementSetError(Kind::identity, i, label + " is proportional to the identity");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (paulis_[j] == p) {
          throw MeasurementSetError(Kind::duplicate, i,
                                    label + " duplicates measurement " + std::to_string(j + 1));
        }
      }
    }
  }

  std::vector<PauliString> paulis_;
};

/// Parses the measurement-set file format: one Pauli per line, optional sign,
/// `#` starts a comment, blank lines ignored. Errors carry the 1-based line.
inline MeasurementSet parse_measurement_file(std::istream& in) {
  std::vector<PauliString> paulis;
  std::vector<std::size_t> lines;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = raw.find_last_not_of(" \t\r");
    const std::string body = raw.substr(first, last - first + 1);
    try {
      paulis.push_back(parse_pauli(body));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
    lines.push_back(line_no);
  }
  if (paulis.empty()) throw ParseError("measurement file contains no Pauli strings");
  try {
    return MeasurementSet(std::move(paulis));
  } catch (const MeasurementSetError& e) {
    throw ParseError(e.what(), lines[e.index()]);
  }
}

inline MeasurementSet parse_measurement_text(const std::string& text) {
  std::istringstream in(text);
  return parse_measurement_file(in);
}

}  // namespace magicscope
