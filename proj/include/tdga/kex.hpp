#pragma once

// Two-message key exchange over F_q^{alpha_lambda} D_{2n}.
//
//   initiator:  pk_i = a_i h gamma_i                    -> responder
//   responder:  pk_j = a_j h gamma_j, k_j = a_j pk_i gamma_j^   -> initiator
//   initiator:  k_i = a_i pk_j gamma_i^
//
// k_i = k_j because rotation elements commute and gamma_i gamma_j^ = gamma_j gamma_i^ on Gamma.

#include <tdga/algebra.hpp>
#include <tdga/error.hpp>
#include <tdga/hex.hpp>

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace tdga {

struct PublicParams {
  Algebra algebra;
  Element h;
};

/// Throws ParameterError(degenerate_h) unless h has nonzero rotation and reflection parts.
inline void validate_h(const Algebra& alg, const Element& h) {
  alg.check(h);
  if (alg.is_zero(alg.rotation_part(h)) || alg.is_zero(alg.reflection_part(h)))
    throw ParameterError(ParamFault::degenerate_h, "public element h must have nonzero rotation and reflection parts");
}

inline PublicParams make_public_params(Algebra alg, Element h) {
  if (!alg.characteristic_divides_order())
    throw ParameterError(ParamFault::characteristic_not_dividing_order, "p must divide 2n");
  validate_h(alg, h);
  return PublicParams{std::move(alg), std::move(h)};
}

/// Field, group, lambda and h, validated. p | 2n is checked before any sampling.
template <RandomSource R>
PublicParams setup_public_params(Field field, std::uint32_t n, R& rng) {
  DihedralGroup group(n);
  if ((2 * std::uint64_t{n}) % field.p() != 0)
    throw ParameterError(ParamFault::characteristic_not_dividing_order,
                         "p = " + std::to_string(field.p()) + " does not divide 2n = " + std::to_string(2 * n));
  const Fe lambda = field.get_lambda(rng);
  Algebra alg(std::move(field), std::move(group), lambda);
  Element h = alg.sample_h(rng);
  return make_public_params(std::move(alg), std::move(h));
}

template <RandomSource R>
PublicParams setup_public_params(std::uint64_t p, unsigned m, std::uint32_t n, R& rng) {
  return setup_public_params(Field::with_default_modulus(p, m), n, rng);
}

/// DomainError unless a is a nonzero rotation element and gamma a nonzero Gamma element.
inline void check_secret(const Algebra& alg, const SecretPair& s) {
  if (!alg.in_rotation_part(s.a) || alg.is_zero(s.a)) throw DomainError("secret a must be a nonzero element of F^a C_n");
  if (!alg.in_gamma(s.gamma) || alg.is_zero(s.gamma)) throw DomainError("secret gamma must be a nonzero element of Gamma");
}

inline Element derive_public(const SecretPair& s, const PublicParams& pp) {
  check_secret(pp.algebra, s);
  return pp.algebra.mul(s.a, pp.h, s.gamma);
}

inline Element derive_shared(const SecretPair& s, const Element& peer_pk, const PublicParams& pp) {
  check_secret(pp.algebra, s);
  const Algebra& alg = pp.algebra;
  return alg.mul(s.a, peer_pk, alg.adjunct(s.gamma));
}

enum class Role { initiator, responder };

/// One party's view of a run. The secret pair is wiped once the key is derived.
class Session {
 public:
  template <RandomSource R>
  static Session start(Role role, Bytes session_id, const PublicParams& pp, R& rng) {
    Session s(role, std::move(session_id));
    s.secret_ = pp.algebra.sample_secret(rng);
    s.public_key_ = derive_public(*s.secret_, pp);
    return s;
  }

  static Session from_secret(Role role, Bytes session_id, SecretPair secret, const PublicParams& pp) {
    Session s(role, std::move(session_id));
    s.public_key_ = derive_public(secret, pp);
    s.secret_ = std::move(secret);
    return s;
  }

  Role role() const noexcept { return role_; }
  const Bytes& session_id() const noexcept { return session_id_; }
  const Element& public_key() const noexcept { return public_key_; }
  bool has_secret() const noexcept { return secret_.has_value(); }

  const SecretPair& secret() const {
    if (!secret_) throw std::logic_error("session secret has been erased");
    return *secret_;
  }

  const Element& complete(const Element& peer_pk, const PublicParams& pp) {
    if (!secret_) throw std::logic_error("session already completed");
    key_ = derive_shared(*secret_, peer_pk, pp);
    erase();
    return *key_;
  }

  const std::optional<Element>& key() const noexcept { return key_; }

 private:
  Session(Role role, Bytes sid) : role_(role), session_id_(std::move(sid)) {}

  void erase() {
    for (auto& c : secret_->a.coeffs) c = Fe{};
    for (auto& c : secret_->gamma.coeffs) c = Fe{};
    secret_.reset();
  }

  Role role_;
  Bytes session_id_;
  std::optional<SecretPair> secret_;
  Element public_key_;
  std::optional<Element> key_;
};

/// `party=<label> sid=<hex> pk=<hex-of-rep>`
struct KexMessage {
  std::string party;
  Bytes session_id;
  Element pk;
};

inline std::string format_message(const KexMessage& msg, const Algebra& alg) {
  return "party=" + msg.party + " sid=" + to_hex(msg.session_id) + " pk=" + to_hex(alg.rep(msg.pk));
}

inline KexMessage parse_message(const std::string& line, const Algebra& alg) {
  std::istringstream in(line);
  std::string tok;
  std::optional<std::string> party, sid, pk;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParameterError(ParamFault::malformed, "bad message token '" + tok + "'");
    const std::string key = tok.substr(0, eq), value = tok.substr(eq + 1);
    if (key == "party") party = value;
    else if (key == "sid") sid = value;
    else if (key == "pk") pk = value;
    else throw ParameterError(ParamFault::malformed, "unknown message field '" + key + "'");
  }
  if (!party || !sid || !pk) throw ParameterError(ParamFault::malformed, "message needs party, sid and pk");
  return KexMessage{*party, from_hex(*sid), alg.from_rep(from_hex(*pk))};
}

}  // namespace tdga
