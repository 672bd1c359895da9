// pdwb: encrypt/decrypt PGM images, run the verification suites and the key
// recovery attacks, and serve or attack an encryption oracle over TCP.
//
// Exit codes: 0 ok, 1 check failed or bad input, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <csignal>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <vector>
#include <optional>
#include <sstream>
#include <string>

#include "keyfile.hpp"
#include "pdwb/attacks.hpp"
#include "pdwb/ciphers.hpp"
#include "pdwb/experiments.hpp"
#include "pdwb/net.hpp"
#include "pdwb/oracle.hpp"
#include "pdwb/pgm.hpp"

namespace {

using namespace pdwb;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kCiphers{"parvin", "norouzi", "yang"};
const std::vector<std::string> kModels{"kp", "cp"};

std::string percent(double rate) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << rate << "%";
  return os.str();
}

// ---- keygen / encrypt / decrypt ------------------------------------------

struct CryptArgs {
  std::string cipher_name;
  CipherId cipher = CipherId::Norouzi;
  std::uint64_t seed = 0;
  std::string key_file;
  std::string in;
  std::string out;
};

KeyMaterial key_for(const CryptArgs& a, const Image& img) {
  KeyMaterial km = a.key_file.empty()
                       ? key_schedule(Seed{a.seed, a.cipher}, img.height(), img.width())
                       : tool::load_key(a.key_file);
  if (km.cipher != a.cipher) {
    throw std::runtime_error("key file is for " + std::string(to_string(km.cipher)));
  }
  if (km.height != img.height() || km.width != img.width()) {
    throw std::runtime_error("key is " + std::to_string(km.height) + "x" +
                                std::to_string(km.width) + " but image is " +
                                std::to_string(img.height()) + "x" + std::to_string(img.width()));
  }
  return km;
}

int run_crypt(const CryptArgs& a, bool forward) {
  const Image in = load_pgm(a.in);
  const KeyMaterial km = key_for(a, in);
  save_pgm(a.out, forward ? encrypt(in, km) : decrypt(in, km));
  return kOk;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::string csv;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

int run_verify(const VerifyArgs& a) {
  SuiteResult r;
  if (a.suite == "tables") {
    r = verify_tables_suite();
  } else if (a.suite == "theorem1") {
    r = verify_theorem1_suite();
  } else if (a.suite == "theorem2") {
    r = verify_theorem2_suite(a.seed_set ? a.seed : 2, a.samples);
  } else {
    const std::uint64_t seed = a.seed_set ? a.seed : 4;
    const auto curve = prob_curve(8, a.samples, seed);
    const auto csv = prob_curve_csv(curve);
    if (a.csv.empty()) {
      std::cout << csv;
    } else {
      tool::write_text(a.csv, csv);
    }
    r = verify_prob_curve_suite(0.02, a.samples, seed);
  }
  std::cerr << r.suite << ": " << (r.passed ? "pass" : "FAIL") << " (" << r.checks
            << " checks)\n";
  if (!r.passed) {
    std::cerr << "first counterexample: " << r.first_failure << "\n";
    return kFailed;
  }
  return kOk;
}

// ---- attack ----------------------------------------------------------------

struct AttackArgs {
  std::string model_name;
  std::string cipher_name;
  AttackModel model = AttackModel::ChosenPlaintext;
  CipherId cipher = CipherId::Norouzi;
  std::string size = "16x16";
  std::size_t trials = 1;
  std::size_t images = 3;
  std::uint64_t seed = 1;
  std::string report;
  bool require_exact = false;
  // Single attack against a key_schedule key, as oracle-serve would hold it.
  std::optional<std::uint64_t> key_seed;
  std::uint64_t sample_seed = 0;
  std::string key_out;
};

void print_recovered(const RecoveredKey& rk) {
  std::cout << "recovered " << rk.resolved_count() << "/" << rk.K_est.size()
            << " keystream positions, queries " << rk.queries_used;
  if (rk.permutation_queries) std::cout << " (permutation " << rk.permutation_queries << ")";
  std::cout << "\n";
}

int run_single_attack(const AttackArgs& a, std::size_t H, std::size_t W) {
  const KeyMaterial km = key_schedule(Seed{*a.key_seed, a.cipher}, H, W);
  LocalOracle oracle(km, a.model, a.sample_seed);
  const auto rk = run_attack(oracle, a.cipher, a.images);
  print_recovered(rk);
  std::cout << "recovery rate " << percent(recovery_rate(rk, km)) << "\n";
  if (!a.key_out.empty()) tool::write_text(a.key_out, to_json(rk));
  return kOk;
}

int run_attack_cmd(const AttackArgs& a) {
  check_supported(a.model, a.cipher);
  const auto [H, W] = tool::parse_size(a.size);
  if (a.key_seed) return run_single_attack(a, H, W);

  AttackSpec spec;
  spec.model = a.model;
  spec.cipher = a.cipher;
  spec.height = H;
  spec.width = W;
  spec.trials = a.trials;
  spec.images = a.images;
  spec.seed = a.seed;
  const auto rep = run_attack_experiment(spec);
  for (const auto& t : rep.trials) {
    std::cout << "trial " << t.trial << ": recovery " << percent(t.recovery_rate) << ", queries "
              << t.queries;
    if (t.permutation_queries) std::cout << " (permutation " << t.permutation_queries << ")";
    std::cout << ", exact decryption " << (t.exact_decryption ? "yes" : "no") << "\n";
  }
  std::cout << "mean recovery rate " << percent(rep.mean_recovery_rate()) << ", exact "
            << rep.exact_decryptions() << "/" << rep.trials.size() << "\n";
  if (!a.report.empty()) {
    tool::write_text(a.report + ".csv", rep.to_csv());
    tool::write_text(a.report + ".json", rep.to_json());
  }
  if (a.require_exact && rep.exact_decryptions() != rep.trials.size()) return kFailed;
  return kOk;
}

// ---- oracle-serve / oracle-attack ------------------------------------------

OracleServer* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server) g_server->stop();
}

struct ServeArgs {
  std::string mode_name;
  std::string cipher_name;
  CipherId cipher = CipherId::Norouzi;
  std::uint64_t seed = 0;
  AttackModel mode = AttackModel::ChosenPlaintext;
  std::string size = "16x16";
  std::string listen = "127.0.0.1:0";
  std::uint64_t sample_seed = 0;
  std::size_t max_connections = 0;
};

int run_serve(const ServeArgs& a) {
  const auto [H, W] = tool::parse_size(a.size);
  LocalOracle oracle(key_schedule(Seed{a.seed, a.cipher}, H, W), a.mode, a.sample_seed);
  OracleServer server(oracle, parse_endpoint(a.listen));
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "listening on port " << server.port() << std::endl;
  server.serve(a.max_connections);
  g_server = nullptr;
  return kOk;
}

// Counts completed queries locally so a dropped connection still leaves a
// usable tally.
class TallyOracle final : public Oracle {
 public:
  explicit TallyOracle(Oracle& inner) : inner_(inner) {}
  AttackModel model() const override { return inner_.model(); }
  std::size_t height() const override { return inner_.height(); }
  std::size_t width() const override { return inner_.width(); }
  Image encrypt(const Image& plain) override {
    auto c = inner_.encrypt(plain);
    ++completed_;
    return c;
  }
  PlainCipherPair sample() override {
    auto p = inner_.sample();
    ++completed_;
    return p;
  }
  std::size_t query_count() const override { return inner_.query_count(); }
  std::size_t completed() const { return completed_; }

 private:
  Oracle& inner_;
  std::size_t completed_ = 0;
};

struct RemoteArgs {
  std::string model_name;
  std::string cipher_name;
  std::string connect;
  std::optional<AttackModel> model;
  CipherId cipher = CipherId::Norouzi;
  std::size_t images = 3;
  std::string key_out;
  std::string report;
};

int abort_report(nlohmann::ordered_json& rep, const std::string& status, const std::string& why,
                 std::size_t completed, const std::string& path) {
  rep["status"] = "aborted";
  rep["reason"] = status + ": " + why;
  rep["queries_completed"] = completed;
  std::cerr << "attack aborted after " << completed << " queries (" << status << "): " << why
            << "\n";
  if (!path.empty()) tool::write_text(path, rep.dump(2) + "\n");
  return kFailed;
}

int run_remote_attack(const RemoteArgs& a) {
  RemoteOracle remote(parse_endpoint(a.connect));
  if (a.model && *a.model != remote.model()) {
    throw UsageError("server runs in " + std::string(to_string(remote.model())) + " mode");
  }
  check_supported(remote.model(), a.cipher);
  TallyOracle oracle(remote);
  nlohmann::ordered_json rep;
  rep["cipher"] = std::string(to_string(a.cipher));
  rep["model"] = std::string(to_string(remote.model()));
  rep["height"] = remote.height();
  rep["width"] = remote.width();
  try {
    const auto rk = run_attack(oracle, a.cipher, a.images);
    print_recovered(rk);
    rep["status"] = "complete";
    rep["queries"] = rk.queries_used;
    rep["resolved"] = rk.resolved_count();
    if (!a.key_out.empty()) tool::write_text(a.key_out, to_json(rk));
    if (!a.report.empty()) tool::write_text(a.report, rep.dump(2) + "\n");
    return kOk;
  } catch (const OracleDisconnected& e) {
    return abort_report(rep, "connection lost", e.what(), oracle.completed(), a.report);
  } catch (const ModelViolation& e) {
    return abort_report(rep, "oracle answers inconsistent", e.what(), oracle.completed(), a.report);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential attacks on permutation-diffusion image ciphers"};
  app.require_subcommand(1);

  CryptArgs crypt;
  std::string keygen_size = "16x16";
  std::string keygen_out;
  auto* keygen = app.add_subcommand("keygen", "Write the key material for a seed as JSON");
  keygen->add_option("--cipher", crypt.cipher_name)->required()->check(CLI::IsMember(kCiphers));
  keygen->add_option("--seed", crypt.seed)->required();
  keygen->add_option("--size", keygen_size, "HxW")->capture_default_str();
  keygen->add_option("--out", keygen_out, "Output file (default stdout)");

  CLI::App* crypt_cmds[2];
  const char* names[2] = {"encrypt", "decrypt"};
  for (int i = 0; i < 2; ++i) {
    auto* c = app.add_subcommand(names[i], std::string(names[i]) + " a PGM image");
    c->add_option("--cipher", crypt.cipher_name)->required()->check(CLI::IsMember(kCiphers));
    auto* seed = c->add_option("--seed", crypt.seed);
    auto* key = c->add_option("--key", crypt.key_file, "Key JSON from keygen")->check(CLI::ExistingFile);
    seed->excludes(key);
    c->add_option("--in", crypt.in)->required()->check(CLI::ExistingFile);
    c->add_option("--out", crypt.out)->required();
    crypt_cmds[i] = c;
  }

  VerifyArgs verify;
  auto* ver = app.add_subcommand("verify", "Run an invariant suite");
  ver->add_option("--suite", verify.suite)
      ->required()
      ->check(CLI::IsMember({"tables", "theorem1", "theorem2", "prob-curve"}));
  ver->add_option("--samples", verify.samples, "Monte-Carlo samples")->capture_default_str();
  auto* vseed = ver->add_option("--seed", verify.seed);
  ver->add_option("--csv", verify.csv, "prob-curve CSV output (default stdout)");

  AttackArgs attack;
  auto* att = app.add_subcommand("attack", "Attack a locally held hidden key");
  att->add_option("--model", attack.model_name)->required()->check(CLI::IsMember(kModels));
  att->add_option("--cipher", attack.cipher_name)->required()->check(CLI::IsMember(kCiphers));
  att->add_option("--size", attack.size, "HxW")->capture_default_str();
  att->add_option("--trials", attack.trials)->capture_default_str()->check(CLI::PositiveNumber);
  att->add_option("--images", attack.images, "Known-plaintext pairs")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  att->add_option("--seed", attack.seed)->capture_default_str();
  att->add_option("--report", attack.report, "Write <prefix>.csv and <prefix>.json");
  att->add_flag("--require-exact", attack.require_exact, "Exit 1 unless every trial decrypts");
  auto* key_seed = att->add_option("--key-seed", attack.key_seed,
                                   "Single attack on the key oracle-serve --seed would hold");
  att->add_option("--sample-seed", attack.sample_seed)->needs(key_seed);
  att->add_option("--key-out", attack.key_out, "Recovered key as JSON")->needs(key_seed);

  ServeArgs serve;
  auto* srv = app.add_subcommand("oracle-serve", "Serve an encryption oracle over TCP");
  srv->add_option("--cipher", serve.cipher_name)->required()->check(CLI::IsMember(kCiphers));
  srv->add_option("--seed", serve.seed)->required();
  srv->add_option("--mode", serve.mode_name)->required()->check(CLI::IsMember(kModels));
  srv->add_option("--size", serve.size, "HxW")->capture_default_str();
  srv->add_option("--listen", serve.listen, "host:port (port 0 picks one)")->capture_default_str();
  srv->add_option("--sample-seed", serve.sample_seed)->capture_default_str();
  srv->add_option("--max-connections", serve.max_connections, "0 serves until signalled");

  RemoteArgs remote;
  auto* ra = app.add_subcommand("oracle-attack", "Attack a remote oracle");
  ra->add_option("--connect", remote.connect, "host:port")->required();
  ra->add_option("--model", remote.model_name)->check(CLI::IsMember(kModels));
  ra->add_option("--cipher", remote.cipher_name)->required()->check(CLI::IsMember(kCiphers));
  ra->add_option("--images", remote.images)->capture_default_str()->check(CLI::PositiveNumber);
  ra->add_option("--key-out", remote.key_out, "Recovered key as JSON");
  ra->add_option("--report", remote.report, "JSON report, partial on connection loss");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    // Names were checked by CLI11 above.
    for (auto* c : {&crypt.cipher_name, &attack.cipher_name, &serve.cipher_name, &remote.cipher_name}) {
      if (c->empty()) *c = "norouzi";
    }
    crypt.cipher = parse_cipher(crypt.cipher_name);
    attack.cipher = parse_cipher(attack.cipher_name);
    serve.cipher = parse_cipher(serve.cipher_name);
    remote.cipher = parse_cipher(remote.cipher_name);
    if (!attack.model_name.empty()) attack.model = parse_model(attack.model_name);
    if (!serve.mode_name.empty()) serve.mode = parse_model(serve.mode_name);
    if (!remote.model_name.empty()) remote.model = parse_model(remote.model_name);

    if (keygen->parsed()) {
      const auto [H, W] = tool::parse_size(keygen_size);
      const auto text = tool::key_to_json(key_schedule(Seed{crypt.seed, crypt.cipher}, H, W));
      if (keygen_out.empty()) {
        std::cout << text;
      } else {
        tool::write_text(keygen_out, text);
      }
      return kOk;
    }
    if (crypt_cmds[0]->parsed()) return run_crypt(crypt, true);
    if (crypt_cmds[1]->parsed()) return run_crypt(crypt, false);
    if (ver->parsed()) {
      verify.seed_set = vseed->count() > 0;
      return run_verify(verify);
    }
    if (att->parsed()) return run_attack_cmd(attack);
    if (srv->parsed()) return run_serve(serve);
    if (ra->parsed()) return run_remote_attack(remote);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    // Unsupported model/cipher combinations and malformed sizes.
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
