// Copyright 2025 The gaussbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line surface: single computations (fidelity, energy), bound
// queries, reproduction of the two summary tables, CSV/JSON bound sweeps,
// randomized conjecture-verification campaigns, and closed-form-vs-oracle
// agreement checks.
//
// Exit codes: 0 success / no violation, 1 violation or oracle disagreement,
// 2 usage or schema error.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gaussbound/gaussbound.hpp"

namespace {

using namespace gaussbound;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

StateDocument load_state(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw SchemaError("cannot open state file \"" + arg.substr(1) + "\"");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_state_json(ss.str());
  }
  return parse_state_json(arg);
}

std::uint64_t resolve_seed(const CLI::Option* seed_opt, std::uint64_t flag_value) {
  if (seed_opt->count() > 0) return flag_value;
  if (const char* env = std::getenv("GAUSSBOUND_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("GAUSSBOUND_SEED", "must be an unsigned integer");
    }
  }
  return flag_value;
}

struct FamilyArgs {
  std::string name;
  std::optional<double> zeta;
  double shape_a = 1.0;
  double shape_c = 0.0;
  bool shape_given = false;
};

BoundFamily make_family(const FamilyArgs& fa) {
  const std::string& n = fa.name;
  const auto need_zeta = [&]() {
    if (!fa.zeta) throw CLI::ValidationError("--family " + n, "requires --zeta");
    return *fa.zeta;
  };
  if (n == "coherent" || n == "coh") return BoundFamily::coherent();
  if (n == "displaced" || n == "delta" || n == "displaced_equal_shape")
    return BoundFamily::displaced_equal_shape();
  if (n == "pure" || n == "pure_general") return BoundFamily::pure_general();
  if (n == "supermixed" || n == "smix") return BoundFamily::supermixed();
  if (n == "mixed" || n == "mixed_equal_purity") return BoundFamily::mixed_equal_purity(need_zeta());
  if (n == "pure-vs-mixed" || n == "pvm") return BoundFamily::pure_vs_mixed(need_zeta());
  if (n == "fixed" || n == "fixed_shape") {
    if (!fa.shape_given)
      throw CLI::ValidationError("--family fixed", "requires --shape-a (and optional --shape-c)");
    return BoundFamily::fixed_shape(fa.shape_a, fa.shape_c);
  }
  throw CLI::ValidationError("--family", "unknown family \"" + n + "\"");
}

int cmd_fidelity(const std::string& a_arg, const std::string& b_arg) {
  const StateDocument da = load_state(a_arg);
  const StateDocument db = load_state(b_arg);
  if (da.kind != db.kind) {
    throw SchemaError("state kinds differ: cannot compare a pure state with a mixed state");
  }
  double f, e1, e2;
  if (da.kind == StateDocument::Kind::pure) {
    const auto s1 = da.to_pure();
    const auto s2 = db.to_pure();
    f = fidelity_pure(s1, s2);
    e1 = energy_pure(s1);
    e2 = energy_pure(s2);
  } else {
    const auto s1 = da.to_mixed();
    const auto s2 = db.to_mixed();
    f = fidelity_mixed(s1, s2);
    e1 = energy_mixed(s1);
    e2 = energy_mixed(s2);
  }
  const EnergyComparison cmp = compare_energies(e1, e2);
  // F can underflow to 0 for wildly distant states; B -> sqrt(2) in that limit
  const double bures = f > 0.0 ? bures_distance(f) : std::sqrt(2.0);
  JsonWriter w;
  w.field("fidelity", f)
      .field("bures", bures)
      .field("e1", cmp.e1)
      .field("e2", cmp.e2)
      .field("y", cmp.y)
      .field("calE", cmp.cal_e);
  std::cout << w.str() << "\n";
  return kExitOk;
}

int cmd_energy(const std::string& arg) {
  const StateDocument d = load_state(arg);
  double energy, mu;
  SecondMoments m{};
  if (d.kind == StateDocument::Kind::pure) {
    const auto s = d.to_pure();
    energy = energy_pure(s);
    mu = 1.0;
    m = moments(s);
  } else {
    const auto s = d.to_mixed();
    energy = energy_mixed(s);
    mu = purity(s);
    m = moments(s);
  }
  JsonWriter w;
  w.raw_field("state", to_canonical_json(d))
      .field("energy", energy)
      .field("purity", mu)
      .field("sxx", m.sxx)
      .field("spp", m.spp)
      .field("sxp", m.sxp);
  std::cout << w.str() << "\n";
  return kExitOk;
}

// The interval of relative energy changes compatible with a symmetric
// difference y: both family-specific interval formulas reduce to this.
void append_interval(JsonWriter& w, double y) {
  const double r = y_to_max_ratio(y);
  w.field("ratio_max", r);
  w.field("calE_min", 1.0 / r - 1.0).field("calE_max", r - 1.0);
}

int cmd_bound(const FamilyArgs& fa, std::optional<double> fid, std::optional<double> yin) {
  const BoundFamily fam = make_family(fa);
  if (fid.has_value() == yin.has_value()) {
    throw CLI::ValidationError("bound", "provide exactly one of --fidelity or --y");
  }
  JsonWriter w;
  w.field("family", std::string(family_name(fam.tag)));
  if (fam.tag == FamilyTag::mixed_equal_purity || fam.tag == FamilyTag::pure_vs_mixed) {
    w.field("zeta", fam.zeta);
  }
  if (fam.tag == FamilyTag::fixed_shape) {
    w.field("a", fam.a).field("c", fam.c);
  }
  if (fid) {
    const double ym = y_max(fam, *fid);
    w.field("fidelity", *fid).field("y_max", ym);
    append_interval(w, ym);
  } else {
    const double fm = f_max(fam, *yin);
    w.field("y", *yin).field("f_max", fm);
    append_interval(w, *yin);
  }
  std::cout << w.str() << "\n";
  return kExitOk;
}

int cmd_inverse_bound(const FamilyArgs& fa, double yin) {
  const BoundFamily fam = make_family(fa);
  JsonWriter w;
  w.field("family", std::string(family_name(fam.tag)));
  if (fam.tag == FamilyTag::mixed_equal_purity || fam.tag == FamilyTag::pure_vs_mixed) {
    w.field("zeta", fam.zeta);
  }
  const double fm = f_max(fam, yin);
  w.field("y", yin).field("f_max", fm);
  append_interval(w, yin);
  std::cout << w.str() << "\n";
  return kExitOk;
}

int cmd_table(int id, bool full) {
  if (id == 1) {
    std::cout << format_table1(full);
  } else if (id == 2) {
    std::cout << format_table2(full);
  } else {
    throw CLI::ValidationError("table", "id must be 1 or 2");
  }
  return kExitOk;
}

struct SweepColumn {
  std::string header;
  BoundFamily family;
};

int cmd_sweep(const std::string& families_csv, double f_min, double f_max_arg, int steps,
              const std::string& format, bool assert_chain, std::optional<double> zeta,
              const FamilyArgs& fa) {
  std::vector<SweepColumn> cols;
  std::stringstream ss(families_csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "coh" || tok == "coherent") {
      cols.push_back({"y_coh", BoundFamily::coherent()});
    } else if (tok == "delta" || tok == "displaced") {
      cols.push_back({"y_delta", BoundFamily::displaced_equal_shape()});
    } else if (tok == "pure") {
      cols.push_back({"y_pure", BoundFamily::pure_general()});
    } else if (tok == "smix" || tok == "supermixed") {
      cols.push_back({"y_smix", BoundFamily::supermixed()});
    } else if (tok == "mixed" || tok == "mix") {
      if (!zeta) throw CLI::ValidationError("sweep", "family \"mixed\" requires --zeta");
      cols.push_back({"y_mixed", BoundFamily::mixed_equal_purity(*zeta)});
    } else if (tok == "pvm" || tok == "pure-vs-mixed") {
      if (!zeta) throw CLI::ValidationError("sweep", "family \"pvm\" requires --zeta");
      cols.push_back({"y_pvm", BoundFamily::pure_vs_mixed(*zeta)});
    } else if (tok == "fixed") {
      if (!fa.shape_given) throw CLI::ValidationError("sweep", "family \"fixed\" requires --shape-a");
      cols.push_back({"y_fixed", BoundFamily::fixed_shape(fa.shape_a, fa.shape_c)});
    } else {
      throw CLI::ValidationError("sweep", "unknown family \"" + tok + "\"");
    }
  }
  if (cols.empty()) throw CLI::ValidationError("sweep", "no families requested");

  std::vector<BoundFamily> fams;
  for (const auto& c : cols) fams.push_back(c.family);
  const auto rows = sweep_rows(fams, f_min, f_max_arg, steps);

  bool chain_ok = true;
  if (assert_chain) {
    for (const auto& row : rows) {
      const double yc = y_max(BoundFamily::coherent(), row.f);
      const double yd = y_max(BoundFamily::displaced_equal_shape(), row.f);
      const double yp = y_max(BoundFamily::pure_general(), row.f);
      if (!(yc < yd && yd < yp)) chain_ok = false;
    }
  }

  if (format == "csv") {
    std::cout << "f";
    for (const auto& c : cols) std::cout << "," << c.header;
    std::cout << ",ratio\n";
    for (const auto& row : rows) {
      std::cout << format_number(row.f);
      for (double v : row.y) std::cout << "," << format_number(v);
      std::cout << "," << format_number(row.ratio) << "\n";
    }
  } else if (format == "json") {
    std::cout << "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      JsonWriter w;
      w.field("f", rows[i].f);
      for (std::size_t k = 0; k < cols.size(); ++k) w.field(cols[k].header, rows[i].y[k]);
      w.field("ratio", rows[i].ratio);
      std::cout << (i ? "," : "") << w.str();
    }
    std::cout << "]\n";
  } else {
    throw CLI::ValidationError("sweep", "format must be csv or json");
  }
  return (assert_chain && !chain_ok) ? kExitViolation : kExitOk;
}

std::string sample_record_json(const SampleRecord& rec) {
  JsonWriter w;
  w.field("index", rec.index)
      .field("a1", rec.a1)
      .field("b1", rec.b1)
      .field("x1", rec.x1)
      .field("p1", rec.p1)
      .field("zeta1", rec.z1)
      .field("a2", rec.a2)
      .field("b2", rec.b2)
      .field("x2", rec.x2)
      .field("p2", rec.p2)
      .field("zeta2", rec.z2)
      .field("fidelity", rec.f)
      .field("e1", rec.e1)
      .field("e2", rec.e2)
      .field("y", rec.y)
      .field("y_bound", rec.y_bound)
      .field("margin", rec.margin);
  return w.str();
}

int cmd_verify(const std::string& family, std::uint64_t samples, std::uint64_t seed, double tol,
               int workers) {
  PairSampleConfig cfg;
  if (family == "pure") {
    cfg.family = PairFamily::pure_general;
  } else if (family == "mixed-equal-zeta") {
    cfg.family = PairFamily::mixed_equal_zeta;
  } else if (family == "pure-vs-mixed") {
    cfg.family = PairFamily::pure_vs_mixed;
  } else if (family == "mixed-general") {
    cfg.family = PairFamily::mixed_general;
  } else {
    throw CLI::ValidationError("verify", "unknown family \"" + family + "\"");
  }
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.workers = workers;
  const VerificationReport report = verify_conjecture(cfg, tol);
  JsonWriter w;
  w.field("family", std::string(pair_family_name(report.family)))
      .field("samples", report.samples)
      .field("seed", report.seed)
      .field("tol", report.tol)
      .field("conjecture_level", report.conjecture_level)
      .field("violations", report.violations)
      .field("worst_margin", report.worst_margin)
      .raw_field("worst", sample_record_json(report.worst));
  std::cout << w.str() << "\n";
  return report.violations == 0 ? kExitOk : kExitViolation;
}

int cmd_oracle_check(std::uint64_t samples, int dim, std::uint64_t seed) {
  if (dim < 2 || dim > 128) throw CLI::ValidationError("oracle-check", "dim must lie in [2, 128]");
  const QuadratureGrid grid = QuadratureGrid::gauss_hermite(std::max(120, 2 * dim));
  const QuadratureGrid overlap_grid = QuadratureGrid::gauss_hermite(120);

  std::uint64_t scored = 0, rejections = 0, attempts = 0;
  double max_fock = 0.0, max_overlap = 0.0, max_energy = 0.0, max_purity = 0.0, max_self = 0.0;
  double worst_tail = 0.0;
  const std::uint64_t max_attempts = samples * 3;

  while (scored < samples && attempts < max_attempts) {
    SplitMix64 rng = SplitMix64::for_index(seed, attempts);
    const bool pure_pair = (attempts % 2) == 0;
    ++attempts;
    try {
      if (pure_pair) {
        const PureGaussianState s1(rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0),
                                   rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
        const PureGaussianState s2(rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0),
                                   rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
        const double closed = fidelity_pure(s1, s2);
        const OverlapResult ov = overlap_pure(s1, s2, overlap_grid);
        max_overlap = std::max(max_overlap, std::abs(ov.fidelity - closed));
        const FockDensityMatrix r1 = fock_matrix(s1, dim, grid);
        const FockDensityMatrix r2 = fock_matrix(s2, dim, grid);
        max_fock = std::max(max_fock, std::abs(fidelity_fock(r1, r2) - closed));
        max_energy = std::max(max_energy, std::abs(energy_fock(r1) - energy_pure(s1)));
        max_self = std::max(max_self, std::abs(overlap_pure(s1, s1, overlap_grid).fidelity - 1.0));
      } else {
        const MixedGaussianState s1(rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0),
                                    rng.uniform(0.0, 0.6));
        const MixedGaussianState s2(rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0),
                                    rng.uniform(0.0, 0.6));
        const double closed = fidelity_mixed(s1, s2);
        const FockDensityMatrix r1 = fock_matrix(s1, dim, grid);
        const FockDensityMatrix r2 = fock_matrix(s2, dim, grid);
        max_fock = std::max(max_fock, std::abs(fidelity_fock(r1, r2) - closed));
        max_energy = std::max(max_energy, std::abs(energy_fock(r1) - energy_mixed(s1)));
        max_energy = std::max(max_energy, std::abs(energy_fock(r2) - energy_mixed(s2)));
        max_purity = std::max(max_purity, std::abs(purity_fock(r1) - purity(s1)));
        max_purity = std::max(max_purity, std::abs(purity_fock(r2) - purity(s2)));
      }
      ++scored;
    } catch (const TruncationError& e) {
      ++rejections;
      worst_tail = std::max(worst_tail, e.tail());
    }
  }

  const bool enough = scored == samples;
  const bool agree = max_fock <= 1e-6 && max_overlap <= 1e-8 && max_energy <= 1e-6 &&
                     max_purity <= 1e-6;
  JsonWriter w;
  w.field("samples_requested", samples)
      .field("samples_scored", scored)
      .field("dim", dim)
      .field("seed", seed)
      .field("truncation_rejections", rejections)
      .field("worst_rejected_tail", worst_tail)
      .field("max_fock_disagreement", max_fock)
      .field("max_overlap_disagreement", max_overlap)
      .field("max_energy_disagreement", max_energy)
      .field("max_purity_disagreement", max_purity)
      .field("max_self_defect", max_self)
      .field("pass", enough && agree);
  std::cout << w.str() << "\n";
  return (enough && agree) ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fidelity, energy, and fidelity-energy tradeoff bounds for single-mode "
               "Gaussian states"};
  app.require_subcommand(1);

  // fidelity
  std::string state_a, state_b;
  auto* sc_fid = app.add_subcommand("fidelity", "Fidelity and energy comparison of two states");
  sc_fid->add_option("--state-a", state_a, "state JSON or @file")->required();
  sc_fid->add_option("--state-b", state_b, "state JSON or @file")->required();

  // energy
  std::string state_one;
  auto* sc_en = app.add_subcommand("energy", "Energy, purity, and second moments of a state");
  sc_en->add_option("--state", state_one, "state JSON or @file")->required();

  // bound / inverse-bound
  FamilyArgs fa;
  std::optional<double> opt_fid, opt_y, opt_zeta;
  auto add_family_opts = [&](CLI::App* sc) {
    sc->add_option("--family", fa.name, "coherent|displaced|fixed|pure|mixed|supermixed|pure-vs-mixed")
        ->required();
    sc->add_option("--zeta", opt_zeta, "mixing parameter for mixed families");
    auto* ao = sc->add_option("--shape-a", fa.shape_a, "fixed-shape a");
    sc->add_option("--shape-c", fa.shape_c, "fixed-shape c = b/a");
    sc->callback([&fa, ao, &opt_zeta]() {
      fa.shape_given = ao->count() > 0;
      fa.zeta = opt_zeta;
    });
  };
  auto* sc_bound = app.add_subcommand("bound", "Bound query: y_max at fixed F, or f_max at fixed y");
  add_family_opts(sc_bound);
  sc_bound->add_option("--fidelity", opt_fid, "fidelity in (0,1)");
  sc_bound->add_option("--y", opt_y, "symmetric relative energy difference");

  FamilyArgs fa_inv;
  double inv_y = 0.0;
  std::optional<double> inv_zeta;
  auto* sc_inv = app.add_subcommand("inverse-bound", "Maximal fidelity at fixed y");
  sc_inv->add_option("--family", fa_inv.name, "family name")->required();
  sc_inv->add_option("--y", inv_y, "symmetric relative energy difference")->required();
  sc_inv->add_option("--zeta", inv_zeta, "mixing parameter for mixed families");
  auto* inv_ao = sc_inv->add_option("--shape-a", fa_inv.shape_a, "fixed-shape a");
  sc_inv->add_option("--shape-c", fa_inv.shape_c, "fixed-shape c = b/a");

  // table
  int table_id = 0;
  bool table_full = false;
  auto* sc_table = app.add_subcommand("table", "Reproduce summary table 1 or 2");
  sc_table->add_option("id", table_id, "table id (1 or 2)")->required();
  sc_table->add_flag("--full", table_full, "print all values at 6 decimals");

  // sweep
  std::string sweep_families = "coh,delta,pure,smix";
  double sweep_fmin = 0.5, sweep_fmax = 0.999;
  int sweep_steps = 50;
  std::string sweep_format = "csv";
  bool sweep_assert_chain = false;
  std::optional<double> sweep_zeta;
  FamilyArgs sweep_fa;
  auto* sc_sweep = app.add_subcommand("sweep", "Emit bound curves over a fidelity grid");
  sc_sweep->add_option("--families", sweep_families, "comma list: coh,delta,pure,smix,mixed,pvm,fixed");
  sc_sweep->add_option("--f-min", sweep_fmin, "grid start (0,1)");
  sc_sweep->add_option("--f-max", sweep_fmax, "grid end (0,1)");
  sc_sweep->add_option("--steps", sweep_steps, "grid points (>= 2)");
  sc_sweep->add_option("--format", sweep_format, "csv|json");
  sc_sweep->add_flag("--assert-chain", sweep_assert_chain,
                     "exit nonzero unless y_coh < y_delta < y_pure on every grid point");
  sc_sweep->add_option("--zeta", sweep_zeta, "zeta for mixed/pvm families");
  auto* sweep_ao = sc_sweep->add_option("--shape-a", sweep_fa.shape_a, "fixed-shape a");
  sc_sweep->add_option("--shape-c", sweep_fa.shape_c, "fixed-shape c");

  // verify
  std::string verify_family = "pure";
  std::uint64_t verify_samples = 10000, verify_seed = 1;
  double verify_tol = 1e-9;
  int verify_workers = 1;
  auto* sc_verify = app.add_subcommand("verify", "Randomized conjecture-verification campaign");
  sc_verify->add_option("--family", verify_family, "pure|mixed-equal-zeta|pure-vs-mixed|mixed-general");
  sc_verify->add_option("--samples", verify_samples, "number of pairs (>= 1)")
      ->check(CLI::Range(std::uint64_t(1), std::uint64_t(1) << 40));
  auto* verify_seed_opt = sc_verify->add_option("--seed", verify_seed, "campaign seed");
  sc_verify->add_option("--tol", verify_tol, "relative violation tolerance");
  sc_verify->add_option("--workers", verify_workers, "worker threads")->check(CLI::Range(1, 256));

  // oracle-check
  std::uint64_t oc_samples = 100, oc_seed = 1;
  int oc_dim = 40;
  auto* sc_oc = app.add_subcommand("oracle-check", "Closed forms vs Fock/quadrature oracle");
  sc_oc->add_option("--samples", oc_samples, "number of pairs")->check(CLI::Range(std::uint64_t(1), std::uint64_t(100000)));
  sc_oc->add_option("--dim", oc_dim, "Fock truncation dimension (<= 128)");
  auto* oc_seed_opt = sc_oc->add_option("--seed", oc_seed, "sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sc_fid->parsed()) return cmd_fidelity(state_a, state_b);
    if (sc_en->parsed()) return cmd_energy(state_one);
    if (sc_bound->parsed()) return cmd_bound(fa, opt_fid, opt_y);
    if (sc_inv->parsed()) {
      fa_inv.zeta = inv_zeta;
      fa_inv.shape_given = inv_ao->count() > 0;
      return cmd_inverse_bound(fa_inv, inv_y);
    }
    if (sc_table->parsed()) return cmd_table(table_id, table_full);
    if (sc_sweep->parsed()) {
      sweep_fa.shape_given = sweep_ao->count() > 0;
      return cmd_sweep(sweep_families, sweep_fmin, sweep_fmax, sweep_steps, sweep_format,
                       sweep_assert_chain, sweep_zeta, sweep_fa);
    }
    if (sc_verify->parsed()) {
      return cmd_verify(verify_family, verify_samples, resolve_seed(verify_seed_opt, verify_seed),
                        verify_tol, verify_workers);
    }
    if (sc_oc->parsed()) {
      return cmd_oracle_check(oc_samples, oc_dim, resolve_seed(oc_seed_opt, oc_seed));
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TruncationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  return kExitUsage;
}
