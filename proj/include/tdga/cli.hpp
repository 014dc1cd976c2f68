#pragma once

// The `tdga` command line, callable in-process for tests.
//
// Exit codes: 0 success, 1 usage or validation error, 2 capacity error.

#include <tdga/attacks.hpp>
#include <tdga/cocycle.hpp>
#include <tdga/error.hpp>
#include <tdga/io.hpp>
#include <tdga/kem.hpp>
#include <tdga/kex.hpp>
#include <tdga/shake.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace tdga {

namespace cli_detail {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw IoError("cannot write '" + path + "'");
}

struct Options {
  std::optional<std::uint64_t> seed;
  bool insecure_show = false;

  std::uint64_t p = 0;
  unsigned m = 1;
  std::uint32_t n = 0;
  std::string out;

  std::string params, pk, sk, ct;
  std::string out_pk, out_sk, out_ct, out_key;

  std::string beta_lambda;

  std::string attack_kind;
  std::uint32_t t = 1;
  std::uint64_t partitions = 1;
  std::uint64_t max_candidates = AttackLimits{}.max_candidates;
  std::uint64_t max_table = AttackLimits{}.max_table_entries;
};

inline ShakeRng make_rng(const Options& o) { return o.seed ? ShakeRng(*o.seed) : ShakeRng::from_entropy(); }

/// Public material goes to the file if given, else to stdout.
inline void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) out << text;
  else write_file(path, text);
}

/// Secret material goes to stdout only with --insecure-show.
inline void emit_secret(std::ostream& out, const Options& o, const std::string& path, const std::string& text) {
  if (!path.empty()) return write_file(path, text);
  if (!o.insecure_show) throw ParameterError(ParamFault::malformed, "refusing to print secret material without --insecure-show");
  out << text;
}

inline PublicParams load_params(const Options& o) { return parse_params(read_file(o.params)); }

inline std::string pair_hex(const Algebra& alg, const SecretPair& s) {
  return "a=" + to_hex(alg.rep(s.a)) + " gamma=" + to_hex(alg.rep(s.gamma));
}

inline int param_gen(const Options& o, std::ostream& out) {
  ShakeRng rng = make_rng(o);
  const PublicParams pp = setup_public_params(o.p, o.m, o.n, rng);
  emit(out, o.out, format_params(pp));
  return 0;
}

inline int keygen(const Options& o, std::ostream& out) {
  const PublicParams pp = load_params(o);
  ShakeRng rng = make_rng(o);
  const KemKeyPair kp = kem_keygen(pp, rng);
  emit_secret(out, o, o.out_sk, format_secret_key(kp, pp.algebra));
  emit(out, o.out_pk, format_public_key(kp.pk, pp.algebra));
  return 0;
}

inline int encaps(const Options& o, std::ostream& out) {
  const PublicParams pp = load_params(o);
  const Element pk = parse_public_key(read_file(o.pk), pp.algebra);
  ShakeRng rng = make_rng(o);
  const Encapsulation e = kem_encaps(pk, pp, rng);
  emit(out, o.out_ct, format_ciphertext(e.ct, pp.algebra));
  emit(out, o.out_key, format_shared_key(e.key));
  return 0;
}

inline int decaps(const Options& o, std::ostream& out) {
  const PublicParams pp = load_params(o);
  const KemKeyPair kp = parse_secret_key(read_file(o.sk), pp);
  const PkeCiphertext c = parse_ciphertext(read_file(o.ct), pp.algebra);
  emit(out, o.out_key, format_shared_key(kem_decaps(kp, c, pp)));
  return 0;
}

inline int kex_demo(const Options& o, std::ostream& out) {
  const PublicParams pp = load_params(o);
  const Algebra& alg = pp.algebra;
  ShakeRng rng = make_rng(o);
  Bytes sid(8);
  for (auto& b : sid) b = static_cast<std::uint8_t>(rng());

  Session alice = Session::start(Role::initiator, sid, pp, rng);
  const std::string m1 = format_message(KexMessage{"initiator", sid, alice.public_key()}, alg);
  out << "-> " << m1 << "\n";

  const KexMessage got1 = parse_message(m1, alg);
  Session bob = Session::start(Role::responder, got1.session_id, pp, rng);
  const std::string m2 = format_message(KexMessage{"responder", got1.session_id, bob.public_key()}, alg);
  const Element kb = bob.complete(got1.pk, pp);
  out << "<- " << m2 << "\n";

  const KexMessage got2 = parse_message(m2, alg);
  if (got2.session_id != sid) throw ParameterError(ParamFault::malformed, "session id mismatch");
  const Element ka = alice.complete(got2.pk, pp);

  out << "initiator key=" << to_hex(alg.rep(ka)) << "\n";
  out << "responder key=" << to_hex(alg.rep(kb)) << "\n";
  const bool agree = ka == kb;
  out << (agree ? "AGREE" : "DISAGREE") << "\n";
  return agree ? 0 : 1;
}

inline int cocycle_check(const Options& o, std::ostream& out) {
  const PublicParams pp = load_params(o);
  const Algebra& alg = pp.algebra;
  const Field& f = alg.field();
  const bool beta = !o.beta_lambda.empty();
  const Fe mu = beta ? parse_field_element(f, o.beta_lambda) : alg.lambda();
  if (mu == f.zero()) throw ParameterError(ParamFault::malformed, "cocycle parameter must be nonzero");
  const Cocycle c = beta ? Cocycle::beta(f, alg.n(), mu) : Cocycle::alpha(f, alg.n(), mu);

  out << "cocycle=" << (beta ? "beta" : "alpha") << " lambda=" << f.to_string(mu) << " n=" << alg.n() << "\n";
  const CocycleCheck r = verify_cocycle(c, alg.group(), f);
  if (r.valid) {
    out << "valid\n";
  } else {
    const auto& [g, h, k] = *r.counterexample;
    out << "counterexample g=" << g << " h=" << h << " k=" << k << "\n";
  }
  out << "rotation-symmetry=" << (rotation_symmetry_holds(c, alg.group()) ? "yes" : "no") << "\n";
  out << "reflection-condition=" << (reflection_condition_holds(c, alg.group(), f) ? "yes" : "no") << "\n";
  return 0;
}

inline int attack(const Options& o, std::ostream& out) {
  const PublicParams pp = load_params(o);
  const Algebra& alg = pp.algebra;
  const DpdInstance inst{pp, parse_public_key(read_file(o.pk), alg)};
  const AttackLimits limits{o.max_candidates, o.max_table};

  out << "params p=" << alg.field().p() << " m=" << alg.field().m() << " n=" << alg.n()
      << " lambda=" << alg.field().to_string(alg.lambda()) << "\n";
  const auto start = std::chrono::steady_clock::now();
  SearchResult r;
  if (o.attack_kind == "exhaustive") {
    out << "attack=exhaustive partitions=" << o.partitions << "\n";
    r = o.partitions == 1 ? exhaustive_dpd(inst, 0, 1, limits) : exhaustive_dpd_parallel(inst, o.partitions, limits);
  } else {
    out << "attack=mitm t=" << o.t << "\n";
    const MitmTable table = mitm_offline(pp, o.t, limits);
    out << "table-entries=" << table.entries << "\n";
    r = mitm_online(table, inst, o.t, limits);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out << "candidates=" << r.candidates << "\n";
  out << "wall-seconds=" << std::fixed << std::setprecision(6) << secs << "\n";
  if (r.pair) {
    out << "found " << pair_hex(alg, *r.pair) << "\n";
    out << "verified=" << (dpd_verify(*r.pair, inst) ? "yes" : "no") << "\n";
  } else {
    out << "found none\n";
  }
  return 0;
}

}  // namespace cli_detail

/// args[0] is the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  Options o;
  CLI::App app{"Twisted dihedral group algebra toolkit: key exchange, PKE, KEM and attacks", "tdga"};
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "Deterministic seed for every random choice");
  app.add_flag("--insecure-show", o.insecure_show, "Allow secret material on stdout");

  auto* pg = app.add_subcommand("param-gen", "Generate public parameters");
  pg->add_option("--p", o.p, "Field characteristic")->required();
  pg->add_option("--m", o.m, "Extension degree")->capture_default_str();
  pg->add_option("--n", o.n, "Dihedral parameter, order 2n")->required();
  pg->add_option("--out", o.out, "Parameter file (stdout if omitted)");

  auto* kg = app.add_subcommand("keygen", "Generate a KEM key pair");
  kg->add_option("--params", o.params)->required()->check(CLI::ExistingFile);
  kg->add_option("--out-pk", o.out_pk, "Public key file (stdout if omitted)");
  kg->add_option("--out-sk", o.out_sk, "Secret key file");

  auto* en = app.add_subcommand("encaps", "Encapsulate a shared key");
  en->add_option("--params", o.params)->required()->check(CLI::ExistingFile);
  en->add_option("--pk", o.pk)->required()->check(CLI::ExistingFile);
  en->add_option("--out-ct", o.out_ct, "Ciphertext file (stdout if omitted)");
  en->add_option("--out-key", o.out_key, "Shared key file (stdout if omitted)");

  auto* de = app.add_subcommand("decaps", "Decapsulate a shared key");
  de->add_option("--params", o.params)->required()->check(CLI::ExistingFile);
  de->add_option("--sk", o.sk)->required()->check(CLI::ExistingFile);
  de->add_option("--ct", o.ct)->required()->check(CLI::ExistingFile);
  de->add_option("--out-key", o.out_key, "Shared key file (stdout if omitted)");

  auto* kd = app.add_subcommand("kex-demo", "Run both sides of the key exchange");
  kd->add_option("--params", o.params)->required()->check(CLI::ExistingFile);

  auto* cc = app.add_subcommand("cocycle-check", "Check the cocycle identity for alpha_lambda or beta_mu");
  cc->add_option("--params", o.params)->required()->check(CLI::ExistingFile);
  cc->add_option("--beta-lambda", o.beta_lambda, "Check beta_mu for this mu (ascending digits)");

  auto* at = app.add_subcommand("attack", "Recover an equivalent secret pair from a public key");
  at->add_option("--params", o.params)->required()->check(CLI::ExistingFile);
  at->add_option("--pk", o.pk)->required()->check(CLI::ExistingFile);
  at->add_option("kind", o.attack_kind)->required()->check(CLI::IsMember({"exhaustive", "mitm"}));
  at->add_option("--t", o.t, "Split point for mitm")->capture_default_str();
  at->add_option("--partitions", o.partitions, "Parallel tasks for exhaustive")->capture_default_str()
      ->check(CLI::PositiveNumber);
  at->add_option("--max-candidates", o.max_candidates)->capture_default_str();
  at->add_option("--max-table", o.max_table)->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("tdga");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (pg->parsed()) return param_gen(o, out);
    if (kg->parsed()) return keygen(o, out);
    if (en->parsed()) return encaps(o, out);
    if (de->parsed()) return decaps(o, out);
    if (kd->parsed()) return kex_demo(o, out);
    if (cc->parsed()) return cocycle_check(o, out);
    if (at->parsed()) return attack(o, out);
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << "\n";
    return 2;
  } catch (const ParameterError& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace tdga
