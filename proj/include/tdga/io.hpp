#pragma once

// Text formats for parameters, keys, ciphertexts and shared keys.
//
// Parameter file (one `key=value` per line; whitespace-separated also accepted):
//   p=3
//   m=1
//   modulus=0,1          digits ascending, optional when m=1
//   n=3
//   lambda=2             base-p digits ascending, comma separated
//   h=<hex of rep(h)>
//
// Element files start with `twisted-dihedral v1 p=<p> m=<m> n=<n> lambda=<digits>`
// followed by one lowercase hex line per element. Secret files put a `SECRET`
// line before the header.

#include <tdga/algebra.hpp>
#include <tdga/error.hpp>
#include <tdga/hex.hpp>
#include <tdga/kem.hpp>
#include <tdga/kex.hpp>
#include <tdga/pke.hpp>

#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace tdga {

inline constexpr std::string_view kFormatTag = "twisted-dihedral";
inline constexpr std::string_view kFormatVersion = "v1";
inline constexpr std::string_view kSecretMarker = "SECRET";

namespace detail {

[[noreturn]] inline void malformed(const std::string& what) { throw ParameterError(ParamFault::malformed, what); }

inline std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    malformed("bad integer for " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

inline std::vector<std::uint64_t> parse_digit_list(std::string_view s, std::string_view what) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = s.find(',', start);
    out.push_back(parse_uint(s.substr(start, comma == std::string_view::npos ? comma : comma - start), what));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Splits `key=value` tokens; rejects duplicates and tokens without '='.
inline std::map<std::string, std::string> parse_fields(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) malformed("expected key=value, got '" + tok + "'");
    if (!out.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second) malformed("duplicate field '" + tok.substr(0, eq) + "'");
  }
  return out;
}

inline std::string join_digits(const std::vector<std::uint64_t>& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(d[i]);
  }
  return s;
}

inline std::vector<std::string> lines_of(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

}  // namespace detail

/// Field element from ascending base-p digits; rejects digits >= p or more than m of them.
inline Fe parse_field_element(const Field& f, std::string_view text) {
  const auto d = detail::parse_digit_list(text, "field element");
  if (d.size() > f.m()) detail::malformed("too many digits for a field element");
  for (auto x : d)
    if (x >= f.p()) detail::malformed("digit " + std::to_string(x) + " out of range");
  return f.from_digits(d);
}

inline std::string format_params(const PublicParams& pp) {
  const Algebra& alg = pp.algebra;
  const Field& f = alg.field();
  std::ostringstream out;
  out << "p=" << f.p() << "\n"
      << "m=" << f.m() << "\n"
      << "modulus=" << detail::join_digits(f.modulus()) << "\n"
      << "n=" << alg.n() << "\n"
      << "lambda=" << f.to_string(alg.lambda()) << "\n"
      << "h=" << to_hex(alg.rep(pp.h)) << "\n";
  return out.str();
}

/// Runs every validation the key exchange needs: field, group, p | 2n,
/// non-square lambda, and h with both parts nonzero.
inline PublicParams parse_params(std::istream& in) {
  auto fields = detail::parse_fields(in);
  auto take = [&](const char* key) -> std::optional<std::string> {
    const auto it = fields.find(key);
    if (it == fields.end()) return std::nullopt;
    std::string v = it->second;
    fields.erase(it);
    return v;
  };
  auto need = [&](const char* key) {
    auto v = take(key);
    if (!v) detail::malformed(std::string("parameter file lacks '") + key + "='");
    return *v;
  };
  const std::uint64_t p = detail::parse_uint(need("p"), "p");
  const std::uint64_t m = detail::parse_uint(need("m"), "m");
  const std::optional<std::string> modulus = take("modulus");
  const std::uint64_t n = detail::parse_uint(need("n"), "n");
  const std::string lambda_text = need("lambda");
  const std::string h_text = need("h");
  if (!fields.empty()) detail::malformed("unknown parameter field '" + fields.begin()->first + "'");
  if (m == 0 || m > 64) throw ParameterError(ParamFault::bad_extension, "m must lie in [1, 64]");
  if (n > 0xffff) throw ParameterError(ParamFault::word_overflow, "n too large");
  if (!modulus && m != 1) detail::malformed("modulus is required when m > 1");

  Field field = modulus ? Field(p, static_cast<unsigned>(m), detail::parse_digit_list(*modulus, "modulus"))
                        : Field(p, 1, {0, 1});
  const Fe lambda = parse_field_element(field, lambda_text);
  Algebra alg(std::move(field), DihedralGroup(static_cast<std::uint32_t>(n)), lambda);
  Element h = alg.from_rep(from_hex(h_text));
  return make_public_params(std::move(alg), std::move(h));
}

inline PublicParams parse_params(const std::string& text) {
  std::istringstream in(text);
  return parse_params(in);
}

inline std::string element_header(const Algebra& alg) {
  return std::string(kFormatTag) + " " + std::string(kFormatVersion) + " p=" + std::to_string(alg.field().p()) +
         " m=" + std::to_string(alg.field().m()) + " n=" + std::to_string(alg.n()) +
         " lambda=" + alg.field().to_string(alg.lambda());
}

namespace detail {

/// Strips an optional SECRET line and the header; checks the header matches alg.
inline std::vector<std::string> body_lines(const std::string& text, const Algebra& alg, bool secret,
                                           std::size_t expected) {
  std::istringstream in(text);
  auto lines = lines_of(in);
  std::size_t at = 0;
  if (secret) {
    if (lines.empty() || lines[0] != kSecretMarker) malformed("secret file lacks SECRET line");
    ++at;
  } else if (!lines.empty() && lines[0] == kSecretMarker) {
    malformed("unexpected SECRET file");
  }
  if (lines.size() <= at || lines[at] != element_header(alg))
    malformed("header missing or does not match parameters (expected '" + element_header(alg) + "')");
  ++at;
  if (lines.size() - at != expected)
    malformed("expected " + std::to_string(expected) + " element lines, got " + std::to_string(lines.size() - at));
  return {lines.begin() + static_cast<std::ptrdiff_t>(at), lines.end()};
}

inline std::string render(const Algebra& alg, std::initializer_list<const Element*> elements, bool secret) {
  std::string s;
  if (secret) s += std::string(kSecretMarker) + "\n";
  s += element_header(alg) + "\n";
  for (const Element* e : elements) s += to_hex(alg.rep(*e)) + "\n";
  return s;
}

}  // namespace detail

inline std::string format_public_key(const Element& pk, const Algebra& alg) { return detail::render(alg, {&pk}, false); }

inline Element parse_public_key(const std::string& text, const Algebra& alg) {
  return alg.from_rep(from_hex(detail::body_lines(text, alg, false, 1)[0]));
}

inline std::string format_ciphertext(const PkeCiphertext& c, const Algebra& alg) {
  return detail::render(alg, {&c.c1, &c.c2}, false);
}

inline PkeCiphertext parse_ciphertext(const std::string& text, const Algebra& alg) {
  const auto body = detail::body_lines(text, alg, false, 2);
  return PkeCiphertext{alg.from_rep(from_hex(body[0])), alg.from_rep(from_hex(body[1]))};
}

/// SECRET, header, a, gamma, s, pk.
inline std::string format_secret_key(const KemKeyPair& kp, const Algebra& alg) {
  return detail::render(alg, {&kp.sk.a, &kp.sk.gamma, &kp.s, &kp.pk}, true);
}

/// Checks the stored pk against a h gamma.
inline KemKeyPair parse_secret_key(const std::string& text, const PublicParams& pp) {
  const Algebra& alg = pp.algebra;
  const auto body = detail::body_lines(text, alg, true, 4);
  KemKeyPair kp{alg.from_rep(from_hex(body[3])),
                SecretPair{alg.from_rep(from_hex(body[0])), alg.from_rep(from_hex(body[1]))},
                alg.from_rep(from_hex(body[2]))};
  if (!alg.in_rotation_part(kp.sk.a) || alg.is_zero(kp.sk.a) || !alg.in_gamma(kp.sk.gamma) || alg.is_zero(kp.sk.gamma))
    detail::malformed("secret pair outside the key space");
  if (derive_public(kp.sk, pp) != kp.pk) detail::malformed("stored public key does not match the secret pair");
  return kp;
}

inline std::string format_shared_key(const SharedKey& k) { return to_hex(k.bytes) + "\n"; }

inline SharedKey parse_shared_key(const std::string& text) {
  std::istringstream in(text);
  const auto lines = detail::lines_of(in);
  if (lines.size() != 1) detail::malformed("shared key file must hold one hex line");
  SharedKey k{from_hex(lines[0])};
  if (k.bytes.size() * 8 != kSharedKeyBits) detail::malformed("shared key must be 256 bits");
  return k;
}

}  // namespace tdga
