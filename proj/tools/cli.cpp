#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <thread>

#include "toreq/arch.hpp"
#include "toreq/csv.hpp"
#include "toreq/cyclo_detect.hpp"
#include "toreq/cyclotomic.hpp"
#include "toreq/error.hpp"
#include "toreq/local_field.hpp"
#include "toreq/padic.hpp"
#include "toreq/parallel.hpp"
#include "toreq/parse.hpp"
#include "toreq/sunit.hpp"
#include "toreq/sweep.hpp"
#include "toreq/torsion.hpp"

namespace toreq::cli {

namespace {

struct Config {
  unsigned threads = 0;  // 0: one per hardware thread
  std::uint64_t seed = 0;
  unsigned precision_max = 512;
  std::uint64_t budget = 100000;
  std::uint64_t trial_bound = 1000000;
  std::string csv;
  bool timing = false;
};

struct Inputs {
  std::string poly;
  std::vector<std::string> polys;
  std::size_t dims = 0;  // 0: inferred from the polynomial
  std::string zeta;
  std::uint64_t prime = 0;
  std::string gens;
  std::size_t place = 0;
  std::string primes;
  std::int64_t modulus = 0;
  std::int64_t n_max = 0;
  std::string strategy = "coprime-only";
  std::string side;
  std::string family = "diagonal-golden";
  std::string n_list;
  bool primes_only = false;
  std::int64_t delta_min = 1;
  double r2 = 0.5;
  unsigned depth = 6;
  std::uint64_t m = 0;
};

class CsvSink {
 public:
  explicit CsvSink(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*file_) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "' for writing");
  }
  bool enabled() const { return file_ != nullptr; }
  void write(const std::string& rows) {
    if (!file_) return;
    *file_ << rows;
    file_->flush();
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Error(ErrorKind::InvalidArgument, "invalid integer '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "empty list");
  return out;
}

LPoly read_poly(const Inputs& in, const std::string& text) {
  std::size_t n = in.dims ? in.dims : infer_nvars(text);
  return parse_poly(text, n);
}

LPoly first_poly(const Inputs& in) { return read_poly(in, in.poly); }

std::string format_kronecker(const KroneckerResult& k) {
  std::string s = k.sign < 0 ? "-" : "";
  std::vector<std::string> parts;
  if (k.monomial_exponent) parts.push_back("x^" + std::to_string(k.monomial_exponent));
  for (const auto& f : k.factors)
    parts.push_back("Phi_" + std::to_string(f.m) + (f.multiplicity > 1 ? "^" + std::to_string(f.multiplicity) : ""));
  if (parts.empty()) parts.push_back("1");
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " * " : "") + parts[i];
  return s;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::Syntax:
    case ErrorKind::ZeroPolynomial:
    case ErrorKind::DimensionMismatch:
      return kUsage;
    case ErrorKind::VanishesOnOrbit:
    case ErrorKind::ZeroSpecialization:
    case ErrorKind::VanishesAtPoint:
    case ErrorKind::AllVanish:
      return kVanishing;
    case ErrorKind::PrecisionExhausted:
      return kPrecision;
    case ErrorKind::Cancelled:
      return kInterrupted;
    default:
      return kNumeric;
  }
}

using Handler = std::function<int(std::ostream&, CsvSink&)>;

void add_config(CLI::App* sub, Config& c) {
  sub->add_option("--threads", c.threads, "Worker threads (default: hardware threads)")->check(CLI::PositiveNumber);
  sub->add_option("--seed", c.seed, "Seed for randomized steps")->capture_default_str();
  sub->add_option("--precision-max", c.precision_max, "Largest p-adic working precision")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("-b,--budget", c.budget, "Quadrature evaluation budget")->capture_default_str();
  sub->add_option("--trial-bound", c.trial_bound, "Trial division bound for S-unit witnesses")
      ->capture_default_str();
  sub->add_option("--csv", c.csv, "Write the result table as CSV to this path");
  sub->add_flag("--timing", c.timing, "Record per-point wall-clock time in CSV output");
}

void add_poly(CLI::App* sub, Inputs& in) {
  sub->add_option("-F,--poly", in.poly, "Polynomial in x1..xn, e.g. \"x1 + x2 + 3\"")->required();
  sub->add_option("-n,--dims", in.dims, "Number of variables (default: largest index used)");
}

void add_zeta(CLI::App* sub, Inputs& in) {
  sub->add_option("-z,--zeta", in.zeta, "Torsion point N:u1,...,un")->required();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  Inputs in;
  Handler handler;

  CLI::App app{"Torsion-point averages, heights and S-unit scans for Laurent polynomials", "toreq"};
  app.require_subcommand(1);
  app.get_formatter()->column_width(40);

  auto* cyc = app.add_subcommand("cyclotomic", "Print the cyclotomic polynomial Phi_m");
  cyc->add_option("m", in.m, "Index m >= 1")->required()->check(CLI::PositiveNumber);
  add_config(cyc, cfg);
  cyc->callback([&] {
    handler = [&](std::ostream& o, CsvSink& csv) {
      const UPoly& phi = cyclotomic(in.m);
      o << phi.to_string() << "\n";
      csv.write(csv_row({"m", "degree", "poly"}) +
                csv_row({std::to_string(in.m), std::to_string(phi.degree()), phi.to_string()}));
      return 0;
    };
  });

  auto* avgp = app.add_subcommand("avg-padic", "Average of log|F|_p over the Galois orbit of a torsion point");
  add_poly(avgp, in);
  add_zeta(avgp, in);
  avgp->add_option("-p,--prime", in.prime, "Prime p")->required();
  avgp->add_option("-G,--subgroup", in.gens, "Generators of a subgroup G of (Z/N)^*, e.g. \"2,4\"");
  avgp->add_option("--place", in.place, "Index of the place above p used with -G")->capture_default_str();
  add_config(avgp, cfg);
  avgp->callback([&] {
    handler = [&](std::ostream& o, CsvSink& csv) {
      LPoly f = first_poly(in);
      TorsionPoint z = TorsionPoint::parse(in.zeta);
      PadicLogValue v;
      std::string g = "full";
      if (in.gens.empty()) {
        v = orbit_average_padic(f, z, in.prime);
      } else {
        auto sub = subgroup_from_generators(z.modulus(), parse_list(in.gens));
        g = in.gens;
        v = subgroup_average_padic(f, z, sub, make_place(in.prime, static_cast<std::uint64_t>(z.modulus()), in.place),
                                   cfg.precision_max);
      }
      o << v.to_string() << "\n" << format_double(v.value()) << "\n";
      csv.write(csv_row({"N", "u", "p", "G", "place", "val_num", "val_den", "value"}) +
                csv_row({std::to_string(z.modulus()), join(z.exponents()), std::to_string(in.prime), g,
                         in.gens.empty() ? "" : std::to_string(in.place), v.valuation.get_num().get_str(),
                         v.valuation.get_den().get_str(), format_double(v.value())}));
      return 0;
    };
  });

  auto* avga = app.add_subcommand("avg-arch", "Average of log|F| over the Galois orbit of a torsion point");
  add_poly(avga, in);
  add_zeta(avga, in);
  add_config(avga, cfg);
  avga->callback([&] {
    handler = [&](std::ostream& o, CsvSink& csv) {
      TorsionPoint z = TorsionPoint::parse(in.zeta);
      double v = orbit_average_arch(first_poly(in), z);
      o << format_double(v) << "\n";
      csv.write(csv_row({"N", "u", "value"}) +
                csv_row({std::to_string(z.modulus()), join(z.exponents()), format_double(v)}));
      return 0;
    };
  });

  auto* mah = app.add_subcommand("mahler", "Logarithmic Mahler measure with an error bound");
  add_poly(mah, in);
  add_config(mah, cfg);
  mah->callback([&] {
    handler = [&](std::ostream& o, CsvSink& csv) {
      MahlerResult r = mahler(first_poly(in), cfg.budget, cfg.seed);
      o << "m = " << format_double(r.value) << " +/- " << format_double(r.error_bound) << " ("
        << to_string(r.method) << ")\n";
      csv.write(csv_row({"method", "value", "error_bound"}) +
                csv_row({to_string(r.method), format_double(r.value), format_double(r.error_bound)}));
      return 0;
    };
  });

  auto* del = app.add_subcommand("delta", "Shortest multiplicative relation of a torsion point");
  add_zeta(del, in);
  add_config(del, cfg);
  del->callback([&] {
    handler = [&](std::ostream& o, CsvSink& csv) {
      TorsionPoint z = TorsionPoint::parse(in.zeta);
      ShortVector s = shortest_relation(z);
      o << "delta = " << s.norm << "\nwitness = (" << join(s.witness) << ")\n";
      csv.write(csv_row({"N", "u", "delta", "witness"}) +
                csv_row({std::to_string(z.modulus()), join(z.exponents()), std::to_string(s.norm), join(s.witness)}));
      return 0;
    };
  });

  auto* cond = app.add_subcommand("conductor", "Conductor of a subgroup of (Z/N)^*");
  cond->add_option("-N,--modulus", in.modulus, "Modulus N")->required()->check(CLI::PositiveNumber);
  cond->add_option("-g,--generators", in.gens, "Generators, e.g. \"3,5\"")->required();
  add_config(cond, cfg);
  cond->callback([&] {
    handler = [&](std::ostream& o, CsvSink& csv) {
      auto g = subgroup_from_generators(in.modulus, parse_list(in.gens));
      std::int64_t f = conductor(g);
      o << "conductor = " << f << "\norder = " << g.size() << "\n";
      csv.write(csv_row({"N", "generators", "order", "conductor"}) +
                csv_row({std::to_string(in.modulus), in.gens, std::to_string(g.size()), std::to_string(f)}));
      return 0;
    };
  });

  auto* kro = app.add_subcommand("kronecker", "Decide whether a univariate polynomial is +-x^b times cyclotomics");
  kro->add_option("-F,--poly", in.poly, "Polynomial in x with integer coefficients")->required();
  add_config(kro, cfg);
  kro->callback([&] {
    handler = [&](std::ostream& o, CsvSink& csv) {
      KroneckerResult k = kronecker_test(parse_poly(in.poly, 1).to_upoly());
      if (k.cyclotomic)
        o << "cyclotomic: yes\nfactorization: " << format_kronecker(k) << "\n";
      else
        o << "cyclotomic: no\nremaining factor: " << k.witness.to_string() << "\n";
      csv.write(csv_row({"cyclotomic", "factorization", "remaining"}) +
                csv_row({k.cyclotomic ? "yes" : "no", k.cyclotomic ? format_kronecker(k) : "",
                         k.cyclotomic ? "" : k.witness.to_string()}));
      return 0;
    };
  });

  auto* boyd = app.add_subcommand("boyd", "Check that every factor is an extended cyclotomic polynomial");
  boyd->add_option("-F,--poly", in.polys, "Factor (repeat for each factor)")->required();
  boyd->add_option("-n,--dims", in.dims, "Number of variables (default: largest index used)");
  add_config(boyd, cfg);
  boyd->callback([&] {
    handler = [&](std::ostream& o, CsvSink& csv) {
      std::size_t n = in.dims;
      for (const auto& p : in.polys) n = std::max(n, infer_nvars(p));
      std::vector<LPoly> fs;
      for (const auto& p : in.polys) fs.push_back(parse_poly(p, n));
      BoydResult b = boyd_check(fs);
      std::string rows = csv_row({"coset"});
      if (b.all_extended_cyclotomic) {
        o << "extended cyclotomic: yes\n";
        for (const auto& c : b.cosets) {
          o << c.to_string() << "\n";
          rows += csv_row({c.to_string()});
        }
      } else {
        o << "extended cyclotomic: no (factor " << b.failed_index + 1 << ")\n";
      }
      csv.write(rows);
      return 0;
    };
  });

  auto* sun = app.add_subcommand("sunit", "Decide whether F(zeta) is an S-unit");
  add_poly(sun, in);
  add_zeta(sun, in);
  sun->add_option("-S,--primes", in.primes, "Prime set, e.g. \"2,3\" (empty for units)")->required();
  add_config(sun, cfg);
  sun->callback([&] {
    handler = [&](std::ostream& o, CsvSink& csv) {
      TorsionPoint z = TorsionPoint::parse(in.zeta);
      SUnitResult r = s_unit_test(first_poly(in), z, PrimeSet::parse(in.primes), cfg.trial_bound);
      std::string status = r.status == SUnitStatus::Yes ? "yes" : r.status == SUnitStatus::No ? "no" : "zero";
      o << "S-unit: " << status;
      if (r.status == SUnitStatus::Yes) o << " (" << format_factorization(r.factors) << ")";
      if (r.status == SUnitStatus::No) o << " (" << (r.witness ? "divisible by " + r.witness->get_str() : r.reason) << ")";
      o << "\nnorm = " << r.norm.get_str() << "\n";
      csv.write(csv_row({"N", "u", "status", "norm", "factorization", "cofactor", "witness"}) +
                csv_row({std::to_string(z.modulus()), join(z.exponents()), status, r.norm.get_str(),
                         format_factorization(r.factors), r.cofactor.get_str(),
                         r.witness ? r.witness->get_str() : ""}));
      return r.status == SUnitStatus::Zero ? static_cast<int>(kVanishing) : 0;
    };
  });

  auto* scan = app.add_subcommand("scan-ih", "Scan torsion points with N <= nmax for S-unit values");
  add_poly(scan, in);
  scan->add_option("-S,--primes", in.primes, "Prime set, e.g. \"2,3\" (empty for units)")->required();
  scan->add_option("--nmax", in.n_max, "Largest N scanned")->required()->check(CLI::PositiveNumber);
  scan->add_option("--strategy", in.strategy, "all, coprime-only or random(count)")->capture_default_str();
  add_config(scan, cfg);
  scan->callback([&] {
    handler = [&](std::ostream& o, CsvSink& csv) {
      LPoly f = first_poly(in);
      ScanReport rep = ih_scan(f, PrimeSet::parse(in.primes), f.nvars(), in.n_max, ScanStrategy::parse(in.strategy),
                               cfg.seed);
      o << "points tested = " << rep.points_tested << "\nhits = " << rep.hits.size()
        << "\nmax delta = " << rep.max_delta << "\n";
      for (const auto& [d, c] : rep.delta_histogram) o << "delta " << d << ": " << c << "\n";
      std::string rows = csv_row({"N", "u", "delta", "norm_sign", "factorization"});
      for (const auto& h : rep.hits)
        rows += csv_row({std::to_string(h.zeta.modulus()), join(h.zeta.exponents()), std::to_string(h.delta),
                         std::to_string(h.norm_sign), format_factorization(h.factors)});
      csv.write(rows);
      return 0;
    };
  });

  auto* sw = app.add_subcommand("sweep", "Error of orbit averages along a torsion family, with a decay fit");
  add_poly(sw, in);
  sw->add_option("--side", in.side, "padic:<p> or arch")->required();
  sw->add_option("--family", in.family, "diagonal-golden, random-primitive or u-fixed(u1,...)")
      ->capture_default_str();
  sw->add_option("--nlist", in.n_list, "Moduli, e.g. \"7,11\", \"50-100\" or \"2-64:2\"")->required();
  sw->add_flag("--primes-only", in.primes_only, "Keep only prime N from --nlist");
  sw->add_option("--delta-min", in.delta_min, "Smallest delta used by the fit")->capture_default_str();
  sw->add_option("--r2", in.r2, "r_squared needed to call the fit significant")->capture_default_str();
  add_config(sw, cfg);
  sw->callback([&] {
    handler = [&](std::ostream& o, CsvSink& csv) {
      LPoly f = first_poly(in);
      SweepSide side = SweepSide::parse(in.side);
      FamilySpec spec = FamilySpec::parse(in.family);
      spec.seed = cfg.seed;
      auto family = generate_family(f.nvars(), parse_n_list(in.n_list, in.primes_only), spec);
      SweepOptions opt{cfg.budget, cfg.seed, cfg.timing};
      csv.write(sweep_csv_header());
      // Chunks keep an interrupted run's CSV complete up to the last chunk.
      const std::size_t chunk = 4 * std::max(1u, thread_count());
      std::vector<SweepRecord> all;
      for (std::size_t i = 0; i < family.size(); i += chunk) {
        std::vector<TorsionPoint> part(family.begin() + i,
                                       family.begin() + std::min(family.size(), i + chunk));
        auto recs = run_sweep(f, part, side, opt);
        std::string rows;
        for (const auto& r : recs) {
          rows += sweep_csv_row(r);
          if (!csv.enabled())
            o << r.zeta.to_string() << " delta=" << r.delta << " err="
              << (r.vanished ? std::string("vanished") : format_double(r.err)) << "\n";
        }
        csv.write(rows);
        all.insert(all.end(), recs.begin(), recs.end());
      }
      try {
        o << fit_decay(all, in.delta_min, in.r2).summary();
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::InsufficientData) throw;
        o << "fit: " << e.what() << "\n";
      }
      return 0;
    };
  });

  auto* cert = app.add_subcommand("certify-atoral", "Try to prove that F has no zero on the unit torus");
  add_poly(cert, in);
  cert->add_option("--depth", in.depth, "Subdivision depth")->capture_default_str()->check(CLI::Range(1, 12));
  add_config(cert, cfg);
  cert->callback([&] {
    handler = [&](std::ostream& o, CsvSink& csv) {
      ToralCertificate c = certify_toral_emptiness(first_poly(in), in.depth);
      if (c.certified)
        o << "certified: yes\nmin |F| on torus >= " << format_double(c.lower_bound) << "\n";
      else
        o << "certified: no\n";
      o << "cells = " << c.cells << "\n";
      csv.write(csv_row({"certified", "lower_bound", "cells"}) +
                csv_row({c.certified ? "yes" : "no", c.certified ? format_double(c.lower_bound) : "",
                         std::to_string(c.cells)}));
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : static_cast<int>(kUsage);
  }

  try {
    cancel_flag().store(false);
    set_thread_count(cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency()));
    CsvSink csv(cfg.csv);
    return handler(out, csv);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

}  // namespace toreq::cli
