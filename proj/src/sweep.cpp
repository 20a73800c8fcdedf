#include "toreq/sweep.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "toreq/arch.hpp"
#include "toreq/csv.hpp"
#include "toreq/error.hpp"
#include "toreq/padic.hpp"
#include "toreq/parallel.hpp"

namespace toreq {

namespace {

std::int64_t parse_i64(std::string_view s, const char* what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorKind::InvalidArgument, std::string("invalid ") + what + " '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    auto k = s.find(sep);
    out.push_back(s.substr(0, k));
    if (k == std::string_view::npos) return out;
    s.remove_prefix(k + 1);
  }
}

}  // namespace

FamilySpec FamilySpec::parse(std::string_view text) {
  FamilySpec f;
  if (text == "diagonal-golden") {
    f.mode = DiagonalGolden;
  } else if (text == "random-primitive") {
    f.mode = RandomPrimitive;
  } else if (text.substr(0, 8) == "u-fixed(" && text.back() == ')') {
    f.mode = UFixed;
    for (auto item : split(text.substr(8, text.size() - 9), ',')) f.u.push_back(parse_i64(item, "exponent"));
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown family '" + std::string(text) +
                                                "' (expected diagonal-golden, random-primitive or u-fixed(u1,...))");
  }
  return f;
}

std::string FamilySpec::to_string() const {
  switch (mode) {
    case DiagonalGolden:
      return "diagonal-golden";
    case RandomPrimitive:
      return "random-primitive";
    case UFixed: {
      std::string s = "u-fixed(";
      for (std::size_t i = 0; i < u.size(); ++i) s += (i ? "," : "") + std::to_string(u[i]);
      return s + ")";
    }
  }
  return "";
}

std::vector<TorsionPoint> generate_family(std::size_t dims, const std::vector<std::int64_t>& n_list,
                                          const FamilySpec& spec) {
  if (n_list.empty()) throw Error(ErrorKind::InvalidArgument, "empty N list");
  if (dims == 0) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  for (auto n : n_list)
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "N must be positive");
  std::vector<TorsionPoint> out;
  switch (spec.mode) {
    case FamilySpec::DiagonalGolden: {
      long double g = 1.5L;
      if (dims >= 2)
        for (int it = 0; it < 100; ++it) {
          long double gn = std::pow(g, static_cast<long double>(dims));
          g -= (gn - g - 1) / (static_cast<long double>(dims) * gn / g - 1);
        }
      for (auto n : n_list) {
        std::vector<std::int64_t> u(dims);
        long double x = static_cast<long double>(n);
        u[0] = 1;
        for (std::size_t i = 1; i < dims; ++i) {
          x /= g;
          u[i] = std::llround(x);
        }
        out.emplace_back(n, std::move(u));
      }
      break;
    }
    case FamilySpec::RandomPrimitive: {
      std::mt19937_64 rng(spec.seed);
      for (auto n : n_list) {
        std::uniform_int_distribution<std::int64_t> dist(0, n - 1);
        std::vector<std::int64_t> u(dims);
        for (;;) {
          std::int64_t g = n;
          for (auto& x : u) {
            x = dist(rng);
            g = std::gcd(g, x);
          }
          if (g == 1) break;
        }
        out.emplace_back(n, std::move(u));
      }
      break;
    }
    case FamilySpec::UFixed:
      if (spec.u.size() != dims)
        throw Error(ErrorKind::DimensionMismatch, "u-fixed vector has " + std::to_string(spec.u.size()) +
                                                      " entries, expected " + std::to_string(dims));
      for (auto n : n_list) out.emplace_back(n, spec.u);
      break;
  }
  return out;
}

std::vector<std::int64_t> parse_n_list(std::string_view text, bool primes_only) {
  std::vector<std::int64_t> out;
  for (auto item : split(text, ',')) {
    std::int64_t step = 1;
    auto colon = item.find(':');
    if (colon != std::string_view::npos) {
      step = parse_i64(item.substr(colon + 1), "step");
      item = item.substr(0, colon);
    }
    auto dash = item.find('-', 1);
    std::int64_t lo = parse_i64(item.substr(0, dash), "N");
    std::int64_t hi = dash == std::string_view::npos ? lo : parse_i64(item.substr(dash + 1), "N");
    if (lo < 1 || hi < lo || step < 1) throw Error(ErrorKind::InvalidArgument, "invalid N range '" + std::string(item) + "'");
    for (std::int64_t n = lo; n <= hi; n += step)
      if (!primes_only || is_prime_u64(static_cast<std::uint64_t>(n))) out.push_back(n);
  }
  if (out.empty()) throw Error(ErrorKind::InvalidArgument, "empty N list");
  return out;
}

SweepSide SweepSide::parse(std::string_view text) {
  SweepSide s;
  if (text == "arch") {
    s.padic = false;
    s.p = 0;
  } else if (text.substr(0, 6) == "padic:") {
    std::int64_t p = parse_i64(text.substr(6), "prime");
    if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
      throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
    s.p = static_cast<std::uint64_t>(p);
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown side '" + std::string(text) + "' (expected padic:<p> or arch)");
  }
  return s;
}

std::vector<SweepRecord> run_sweep(const LPoly& f, const std::vector<TorsionPoint>& family, const SweepSide& side,
                                   const SweepOptions& options) {
  Rat limit_val;
  double limit_float;
  if (side.padic) {
    limit_val = gauss_norm_log(f, side.p).valuation;
    limit_float = PadicLogValue{side.p, limit_val}.value();
  } else {
    limit_float = mahler(f, options.budget, options.seed).value;
  }
  const double logp = side.padic ? std::log(static_cast<double>(side.p)) : 0;
  return parallel_map(family.size(), [&](std::size_t i) {
    check_cancelled();
    auto start = std::chrono::steady_clock::now();
    SweepRecord r;
    r.side = side;
    r.zeta = family[i];
    r.delta = delta(r.zeta);
    r.phi_n = euler_phi(static_cast<std::uint64_t>(r.zeta.modulus()));
    r.limit_float = limit_float;
    if (side.padic) r.limit_val = limit_val;
    try {
      if (side.padic) {
        Rat v = orbit_average_valuation(f, r.zeta, side.p);
        r.avg_val = v;
        r.avg_float = PadicLogValue{side.p, v}.value();
        r.err = Rat(abs(v - limit_val)).get_d() * logp;
      } else {
        r.avg_float = orbit_average_arch(f, r.zeta);
        r.err = std::fabs(r.avg_float - limit_float);
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::VanishesOnOrbit && e.kind() != ErrorKind::ZeroSpecialization) throw;
      r.vanished = true;
      r.avg_float = std::nan("");
      r.err = std::nan("");
    }
    if (options.timing)
      r.micros = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
    return r;
  });
}

std::string sweep_csv_header() {
  return csv_row({"side", "p", "N", "u", "delta", "phiN", "avg_val_num", "avg_val_den", "limit_val_num",
                  "limit_val_den", "avg_float", "limit_float", "err", "vanished", "micros"});
}

std::string sweep_csv_row(const SweepRecord& r) {
  std::string u;
  for (std::size_t i = 0; i < r.zeta.dim(); ++i) u += (i ? "," : "") + std::to_string(r.zeta.exponents()[i]);
  auto num = [](const std::optional<Rat>& v) { return v ? v->get_num().get_str() : std::string(); };
  auto den = [](const std::optional<Rat>& v) { return v ? v->get_den().get_str() : std::string(); };
  return csv_row({r.side.name(), r.side.padic ? std::to_string(r.side.p) : "", std::to_string(r.zeta.modulus()), u,
                  std::to_string(r.delta), std::to_string(r.phi_n), num(r.avg_val), den(r.avg_val),
                  num(r.limit_val), den(r.limit_val), format_double(r.avg_float), format_double(r.limit_float),
                  format_double(r.err), r.vanished ? "1" : "0", std::to_string(r.micros)});
}

std::string DecayFit::summary() const {
  return "kappa_hat=" + format_double(kappa_hat) + "\nintercept=" + format_double(intercept) +
         "\nr_squared=" + format_double(r_squared) + "\npoints_used=" + std::to_string(points_used) +
         "\nsignificant=" + (significant ? "yes" : "no") + "\n";
}

DecayFit fit_decay(const std::vector<SweepRecord>& records, std::int64_t delta_min, double significance_r2) {
  std::map<std::pair<TorsionPoint, std::uint64_t>, std::pair<double, double>> points;
  for (const auto& r : records) {
    if (r.vanished || !(r.err > 0) || !std::isfinite(r.err) || r.delta < delta_min) continue;
    points.emplace(std::make_pair(r.zeta, r.side.p),
                   std::make_pair(std::log(static_cast<double>(r.delta)), -std::log(r.err)));
  }
  DecayFit fit;
  fit.points_used = points.size();
  if (points.size() < 5)
    throw Error(ErrorKind::InsufficientData,
                "fit needs at least 5 points with err > 0, have " + std::to_string(points.size()));
  const double n = static_cast<double>(points.size());
  double mx = 0, my = 0;
  for (const auto& [k, xy] : points) {
    mx += xy.first;
    my += xy.second;
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [k, xy] : points) {
    sxx += (xy.first - mx) * (xy.first - mx);
    sxy += (xy.first - mx) * (xy.second - my);
    syy += (xy.second - my) * (xy.second - my);
  }
  if (sxx <= 0) throw Error(ErrorKind::InsufficientData, "all points have the same delta");
  fit.kappa_hat = sxy / sxx;
  fit.intercept = my - fit.kappa_hat * mx;
  fit.r_squared = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  fit.significant = fit.kappa_hat > 0 && fit.r_squared >= significance_r2;
  return fit;
}

}  // namespace toreq
