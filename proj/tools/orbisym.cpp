// Command-line front end. Exit codes: 0 success, 1 a check failed, 2 bad input.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "orbisym/io.hpp"
#include "orbisym/oracles.hpp"

using namespace orbisym;

namespace {

struct Common {
  std::string output = "json";
  unsigned jobs = 1;
};

struct RingArgs {
  std::string algebra = "mock2";
  int n = 2;
  std::string group = "full";
  bool signed_product = false;
};

std::size_t group_bound() {
  const char* env = std::getenv("ORBISYM_MAX_GROUP");
  if (!env || !*env) return kDefaultGroupBound;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw std::invalid_argument("ORBISYM_MAX_GROUP must be a positive integer");
  return static_cast<std::size_t>(v);
}

// "full", or generators in cycle notation separated by ',' or ';'.
GroupTable parse_group(const std::string& spec, int n) {
  if (spec == "full") return symmetric_group(n, group_bound());
  std::vector<Permutation> gens;
  std::string cur;
  for (char c : spec + ",") {
    if (c == ',' || c == ';') {
      if (cur.find_first_not_of(' ') != std::string::npos) gens.push_back(Permutation::parse(cur, n));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return close_subgroup(gens, n, group_bound());
}

OrbifoldRing make_ring(const RingArgs& a) { return OrbifoldRing(resolve_algebra(a.algebra), parse_group(a.group, a.n)); }

void print_table(const Json& j, std::ostream& os, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  const auto flat = [](const Json& v) {
    if (!v.is_array()) return v.is_primitive();
    for (const auto& e : v)
      if (!e.is_primitive()) return false;
    return true;
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_primitive()) {
        os << pad << k << "\t" << scalar(v) << "\n";
      } else if (flat(v)) {
        os << pad << k << "\t";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << scalar(v[i]);
        os << "\n";
      } else {
        os << pad << k << "\n";
        print_table(v, os, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (flat(v)) {
        os << pad;
        if (v.is_array())
          for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << scalar(v[i]);
        else
          os << scalar(v);
        os << "\n";
      } else {
        print_table(v, os, indent);
        if (&v != &j.back()) os << pad << "--\n";
      }
    }
  } else {
    os << pad << scalar(j) << "\n";
  }
}

int emit(const Json& j, const Common& c, int code = 0) {
  if (c.output == "table")
    print_table(j, std::cout);
  else
    std::cout << j.dump(2) << "\n";
  return code;
}

Json basis_json(const OrbifoldRing& ring, std::size_t index) { return to_json(ring, ring.basis_class(index)).at(0); }

Json assoc_json(const AssocCertificate& cert, const std::function<Json(std::size_t)>& describe) {
  Json j = to_json(cert);
  if (cert.witness) {
    Json w = Json::array();
    for (std::size_t i : *cert.witness) w.push_back(describe(i));
    j["witness_basis"] = std::move(w);
  }
  return j;
}

CheckOptions assoc_options(const std::string& mode, std::size_t dim, std::uint64_t seed, std::size_t samples,
                           std::size_t max_dim, unsigned jobs, bool signed_product) {
  CheckOptions o;
  o.seed = seed;
  o.samples = samples;
  o.max_dim = max_dim;
  o.jobs = jobs;
  o.signed_product = signed_product;
  if (mode == "exhaustive")
    o.exhaustive = true;
  else if (mode == "sampled")
    o.exhaustive = false;
  else
    o.exhaustive = dim <= max_dim;
  return o;
}

void add_ring_args(CLI::App* sub, RingArgs& a) {
  sub->add_option("--algebra", a.algebra, "built-in name or spec file")->capture_default_str();
  sub->add_option("--n", a.n, "number of factors")->required()->check(CLI::Range(1, 12));
  sub->add_option("--group", a.group, "'full' or generators in cycle notation, e.g. \"(1 2),(1 2 3)\"")
      ->capture_default_str();
  sub->add_flag("--signed", a.signed_product, "use the sign-twisted product");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbisym: orbifold cohomology of symmetric products"};
  app.fallthrough();
  app.require_subcommand(1);
  Common common;
  app.add_option("--output", common.output, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--jobs", common.jobs, "worker threads for exhaustive checks")->check(CLI::Range(1u, 256u));

  std::function<int()> run;

  // algebra
  auto* algebra = app.add_subcommand("algebra", "Frobenius algebra specs");
  algebra->require_subcommand(1);
  std::string spec_path;
  auto* validate_cmd = algebra->add_subcommand("validate", "check the axioms of a spec file");
  validate_cmd->add_option("spec", spec_path, "spec file or built-in name")->required();
  validate_cmd->callback([&] {
    run = [&] {
      bool builtin = false;
      for (const auto& name : builtin_names()) builtin = builtin || name == spec_path;
      const auto spec = builtin ? builtin_spec(spec_path) : algebra_spec_from_json(read_json_file(spec_path));
      const auto report = validate(spec);
      Json j = to_json(report);
      j["name"] = spec.name;
      if (report.ok()) {
        const FrobeniusAlgebra alg(spec);
        const auto as_json = [&](const SparseVec& v) {
          Json out = Json::object();
          for (const auto& [i, c] : v) out[alg.label(i)] = to_json(c);
          return out;
        };
        j["euler"] = as_json(alg.euler());
        const auto diag = diagonal_euler(alg);
        j["diagonal_euler"] = as_json(diag);
        j["euler_is_diagonal_class"] = diag == alg.euler();
      }
      return emit(j, common, report.ok() ? 0 : 1);
    };
  });
  std::string show_name;
  auto* show_cmd = algebra->add_subcommand("show", "print the spec of a built-in algebra");
  show_cmd->add_option("name", show_name)->required()->check(CLI::IsMember(builtin_names()));
  show_cmd->callback([&] { run = [&] { return emit(to_json(builtin_spec(show_name)), common); }; });

  // ring
  auto* ring = app.add_subcommand("ring", "the orbifold ring H*(S^n, G)");
  ring->require_subcommand(1);
  RingArgs ra;

  bool shift = false;
  auto* poincare_cmd = ring->add_subcommand("poincare", "Poincare polynomial of the invariant ring");
  add_ring_args(poincare_cmd, ra);
  poincare_cmd->add_flag("--shift", shift, "lower every degree by n d");
  poincare_cmd->callback([&] {
    run = [&] {
      const auto R = make_ring(ra);
      const auto p = orbifold_poincare(R, shift ? std::optional<int>(ra.n * R.algebra().d()) : std::nullopt);
      return emit(to_json(p), common);
    };
  });

  std::string lhs, rhs;
  auto* multiply_cmd = ring->add_subcommand("multiply", "product of two ring elements");
  add_ring_args(multiply_cmd, ra);
  multiply_cmd->add_option("--lhs", lhs, "JSON file")->required();
  multiply_cmd->add_option("--rhs", rhs, "JSON file")->required();
  multiply_cmd->callback([&] {
    run = [&] {
      const auto R = make_ring(ra);
      const auto a = orbifold_class_from_json(R, read_json_file(lhs));
      const auto b = orbifold_class_from_json(R, read_json_file(rhs));
      return emit(to_json(R, R.multiply(a, b, ra.signed_product)), common);
    };
  });

  bool do_assoc = false, do_skew = false, do_pairing = false;
  std::uint64_t seed = 1;
  std::size_t samples = 1000, skew_samples = 200, max_dim = 200;
  std::string mode = "auto";
  auto* check_cmd = ring->add_subcommand("check", "associativity, skew commutativity, pairing");
  add_ring_args(check_cmd, ra);
  check_cmd->add_flag("--assoc", do_assoc);
  check_cmd->add_flag("--skew", do_skew);
  check_cmd->add_flag("--pairing", do_pairing);
  check_cmd->add_option("--seed", seed)->capture_default_str();
  check_cmd->add_option("--samples", samples, "sampled associativity triples")->capture_default_str();
  check_cmd->add_option("--skew-samples", skew_samples, "skew commutativity pairs")->capture_default_str();
  check_cmd->add_option("--max-dim", max_dim, "largest ring dimension checked exhaustively")->capture_default_str();
  check_cmd->add_option("--mode", mode, "auto, exhaustive or sampled")
      ->check(CLI::IsMember({"auto", "exhaustive", "sampled"}))
      ->capture_default_str();
  check_cmd->callback([&] {
    run = [&] {
      if (!do_assoc && !do_skew && !do_pairing) throw std::invalid_argument("choose --assoc, --skew or --pairing");
      const auto R = make_ring(ra);
      Json j;
      bool ok = true;
      j["dim"] = R.dim();
      if (do_assoc) {
        const auto opts = assoc_options(mode, R.dim(), seed, samples, max_dim, common.jobs, ra.signed_product);
        const auto cert = check_associativity(R, opts);
        ok = ok && cert.passed;
        j["assoc"] = assoc_json(cert, [&](std::size_t i) { return basis_json(R, i); });
      }
      if (do_skew) {
        const auto cert = check_skew_commutativity(R, seed, skew_samples, ra.signed_product);
        ok = ok && cert.passed;
        Json s{{"signed", cert.signed_product}, {"seed", cert.seed}, {"count", cert.count}, {"passed", cert.passed}};
        s["witness"] = cert.witness ? Json::array({to_json(R, cert.witness->first), to_json(R, cert.witness->second)})
                                    : Json(nullptr);
        j["skew"] = std::move(s);
      }
      if (do_pairing) {
        const auto rep = check_pairing(R);
        ok = ok && rep.block_antidiagonal && rep.nondegenerate;
        Json p{{"block_antidiagonal", rep.block_antidiagonal}, {"nondegenerate", rep.nondegenerate},
               {"rank", rep.rank}, {"dim", rep.dim}};
        p["witness"] = rep.witness ? Json::array({basis_json(R, rep.witness->first), basis_json(R, rep.witness->second)})
                                   : Json(nullptr);
        j["pairing"] = std::move(p);
      }
      return emit(j, common, ok ? 0 : 1);
    };
  });

  std::vector<std::string> class_files;
  auto* triple_cmd = ring->add_subcommand("cr-triple", "Chen-Ruan triple pairing of three invariant classes");
  add_ring_args(triple_cmd, ra);
  triple_cmd->add_option("--class", class_files, "three JSON files keyed by class representatives")
      ->required()
      ->expected(3);
  triple_cmd->callback([&] {
    run = [&] {
      if (class_files.size() != 3) throw std::invalid_argument("--class takes exactly three files");
      const auto R = make_ring(ra);
      std::vector<CRClass> xs;
      for (const auto& f : class_files) xs.push_back(cr_class_from_json(R, read_json_file(f)));
      const Rational value = R.cr_triple_pairing(xs[0], xs[1], xs[2]);
      const auto prod = R.multiply(R.multiply(R.to_CR(xs[0]), R.to_CR(xs[1])), R.to_CR(xs[2]));
      const Rational quotient = R.integral(prod, true);
      return emit(Json{{"cr_triple", to_json(value)}, {"quotient_integral", to_json(quotient)}, {"equal", value == quotient}},
                  common, value == quotient ? 0 : 1);
    };
  });

  // kummer
  auto* kummer = app.add_subcommand("kummer", "the ring H*(S) x H*(S_0^n, S_n) of an abelian surface");
  kummer->require_subcommand(1);
  int kn = 2, rank = 4;
  auto* kp_cmd = kummer->add_subcommand("poincare", "raw and (1+t)^4-reduced Poincare polynomials");
  kp_cmd->add_option("--n", kn)->required()->check(CLI::Range(1, 8));
  kp_cmd->add_option("--rank", rank, "torsion rank r")->capture_default_str()->check(CLI::Range(0, 8));
  kp_cmd->callback([&] {
    run = [&] {
      const KummerRing R(kn, rank, group_bound());
      const auto p = kummer_poincare(R);
      return emit(Json{{"raw", to_json(p.raw)}, {"reduced", to_json(p.reduced)}}, common);
    };
  });
  auto* km_cmd = kummer->add_subcommand("multiply", "product of two Kummer classes");
  km_cmd->add_option("--n", kn)->required()->check(CLI::Range(1, 8));
  km_cmd->add_option("--rank", rank, "torsion rank r")->capture_default_str()->check(CLI::Range(0, 8));
  km_cmd->add_option("--lhs", lhs, "JSON file")->required();
  km_cmd->add_option("--rhs", rhs, "JSON file")->required();
  km_cmd->callback([&] {
    run = [&] {
      const KummerRing R(kn, rank, group_bound());
      const auto a = kummer_class_from_json(R, read_json_file(lhs));
      const auto b = kummer_class_from_json(R, read_json_file(rhs));
      return emit(to_json(R, R.multiply(a, b)), common);
    };
  });

  // anmodel
  auto* anmodel = app.add_subcommand("anmodel", "the A_n local model");
  anmodel->require_subcommand(1);
  int an = 1;
  auto* compare_cmd = anmodel->add_subcommand("compare", "orbifold versus resolution pairing");
  compare_cmd->add_option("--n", an)->required()->check(CLI::Range(1, 64));
  compare_cmd->callback([&] {
    run = [&] {
      const AnModel m(an);
      const auto v = rescaling_obstruction(an);
      const bool ok = (v.witness && v.witness->verified) || (v.proof && v.proof->proven);
      return emit(Json{{"n", an},
                       {"orbifold_gram", to_json(m.orbifold_gram())},
                       {"resolution_gram", to_json(m.resolution_gram())},
                       {"verdict", to_json(v)}},
                  common, ok ? 0 : 1);
    };
  });

  // oracle
  auto* oracle = app.add_subcommand("oracle", "independent reference computations");
  oracle->require_subcommand(1);
  std::vector<std::int64_t> betti;
  int on = 2;
  auto* g_cmd = oracle->add_subcommand("goettsche", "Betti polynomials of Hilbert schemes of points");
  g_cmd->add_option("--betti", betti, "b0,b1,b2,b3,b4")->required()->delimiter(',')->expected(5);
  g_cmd->add_option("--n", on)->required()->check(CLI::Range(0, 10));
  g_cmd->callback([&] {
    run = [&] {
      const auto series = goettsche_series(betti, on);
      Json j = Json::object();
      for (std::size_t k = 0; k < series.size(); ++k) j[std::to_string(k)] = to_json(series[k]);
      return emit(j, common);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return run ? run() : 2;
  } catch (const InvalidAlgebra& e) {
    std::cerr << "error: " << e.what() << "\n";
    emit(to_json(e.report()), common);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
