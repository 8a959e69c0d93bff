#include "lcz/cli.hpp"

#include "lcz/coeff_io.hpp"
#include "lcz/constant_ratio.hpp"
#include "lcz/kurtz.hpp"
#include "lcz/roots.hpp"
#include "lcz/sector.hpp"
#include "lcz/sweep.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <regex>
#include <sstream>
#include <thread>

namespace lcz::cli {

namespace {

using Json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A certificate that could not be issued; the report is still printed.
struct Outcome {
  int code = kExitOk;
  Json report;
  std::string text;  // preformatted output that replaces the report when set
};

Json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

Json nums(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(num(x));
  return out;
}

Json pairs(const std::vector<std::pair<double, double>>& v) {
  Json out = Json::array();
  for (const auto& [lo, hi] : v) out.push_back(Json::array({num(lo), num(hi)}));
  return out;
}

Json angle_json(const Angle& a) {
  return {{"input", a.text}, {"radians", a.radians}, {"pi_fraction", a.pi_fraction}};
}

Json angle_json(double radians) { return {{"radians", num(radians)}, {"pi_fraction", num(radians / kPi)}}; }

std::optional<double> parse_full_double(std::string_view s) {
  double v = 0;
  const auto* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) return std::nullopt;
  return v;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

// --- settings shared by every subcommand ---

struct Common {
  std::optional<int> digits;
  std::string output = "json";
  bool output_given = false;
};

int resolve_digits(const Common& c, int fallback) {
  int d = fallback;
  if (c.digits) {
    d = *c.digits;
  } else if (const char* env = std::getenv("LCZ_DIGITS"); env != nullptr && *env != '\0') {
    const std::string_view s(env);
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
    if (ec != std::errc() || p != s.data() + s.size()) throw UsageError("LCZ_DIGITS is not an integer: " + std::string(s));
  }
  if (d < kDoubleDigits) throw UsageError("digits must be at least 15");
  if (d > 5000) throw UsageError("digits above 5000 are not supported");
  return d;
}

// Operations that only run in double precision still accept --digits for
// uniformity but say so when more was asked for.
void note_double_only(const Common& c, std::ostream& err, const char* what) {
  if (c.digits && *c.digits > kDoubleDigits) {
    err << "lcz: note: " << what << " runs in double precision; --digits is ignored\n";
  }
}

Json envelope(int digits, Json inputs, Json result) {
  Json j;
  j["artifact_version"] = kArtifactVersion;
  j["digits"] = digits;
  j["inputs"] = std::move(inputs);
  j["result"] = std::move(result);
  return j;
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string render_table(const Json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  std::ostringstream out;
  for (const auto& [k, v] : rows) out << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  return out.str();
}

// --- coefficient input ---

struct CoeffSource {
  std::string file;
  std::string inline_text;
};

void add_coeff_options(CLI::App* sub, CoeffSource& src) {
  auto* f = sub->add_option("--coeffs", src.file, "coefficient file, one literal per line or a JSON array");
  auto* i = sub->add_option("--inline", src.inline_text, "coefficients on the command line, e.g. 1,6,5,1");
  f->excludes(i);
}

std::vector<CoeffLiteral> load(const CoeffSource& s) {
  if (!s.file.empty()) return read_coeff_file(s.file);
  if (!s.inline_text.empty()) return parse_coeff_inline(s.inline_text);
  throw UsageError("one of --coeffs or --inline is required");
}

Json source_json(const CoeffSource& s, const std::vector<CoeffLiteral>& lits) {
  Json j;
  if (!s.file.empty()) {
    j["coeffs"] = s.file;
  } else {
    j["inline"] = s.inline_text;
  }
  Json c = Json::array();
  for (const auto& l : lits) {
    if (l.im) {
      c.push_back(Json::array({l.re, *l.im}));
    } else {
      c.push_back(l.re);
    }
  }
  j["coefficients"] = std::move(c);
  return j;
}

Angle angle_arg(const std::string& text, const char* flag) {
  try {
    return parse_angle(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(flag) + ": not an angle: '" + text + "'");
  }
}

// |f(z)| / sum |c_j||z|^j, the componentwise backward error of a root.
template <class Real>
Real relative_residual(const std::vector<complex_t<Real>>& a, const complex_t<Real>& z) {
  using std::abs;
  complex_t<Real> acc = a.back();
  Real mag = abs(a.back());
  const Real az = abs(z);
  for (std::size_t j = a.size() - 1; j-- > 0;) {
    acc = acc * z + a[j];
    mag = mag * az + abs(a[j]);
  }
  return mag > 0 ? Real(abs(acc) / mag) : Real(abs(acc));
}

// --- subcommands ---

struct BetaOpts {
  CoeffSource src;
  bool moduli = false;
};

Outcome do_beta(const Common& c, const BetaOpts& o) {
  const auto lits = load(o.src);
  const int digits = resolve_digits(c, kDoubleDigits);
  const bool moduli = o.moduli || has_imaginary_part(lits);
  Json r;
  if (digits == kDoubleDigits) {
    std::vector<double> v;
    for (const auto& z : to_complex_coeffs(lits)) v.push_back(moduli ? std::abs(z) : z.real());
    const auto p = beta_profile(CoeffSeq<double>(std::move(v)));
    r = {{"degree", p.betas.size() + 1}, {"moduli", moduli}, {"betas", nums(p.betas)},
         {"min_beta", num(p.min_beta)}, {"mode_index", p.mode_index}, {"log_concave", p.min_beta >= 1}};
  } else {
    PrecisionScope scope(digits + 10);
    std::vector<HpReal> v;
    for (const auto& l : lits) {
      HpReal re = parse_hp(l.re);
      if (l.im) {
        const HpReal im = parse_hp(*l.im);
        v.emplace_back(sqrt(re * re + im * im));
      } else {
        v.emplace_back(moduli ? HpReal(abs(re)) : re);
      }
    }
    const auto p = beta_profile(CoeffSeq<HpReal>(std::move(v)));
    Json betas = Json::array();
    for (const auto& b : p.betas) betas.push_back(to_decimal(b, digits));
    r = {{"degree", p.betas.size() + 1}, {"moduli", moduli}, {"betas", betas},
         {"min_beta", to_decimal(p.min_beta, digits)}, {"mode_index", p.mode_index},
         {"log_concave", p.min_beta >= 1}};
  }
  Json in = source_json(o.src, lits);
  in["moduli"] = o.moduli;
  return {kExitOk, envelope(digits, in, r), {}};
}

Json thresholds_json(const SectorThresholds& th) {
  return {{"theta", angle_json(th.theta)},
          {"beta0", th.beta0},
          {"branch", to_string(th.branch)},
          {"a", th.a},
          {"candidates",
           {{"FourCosSq", th.four_cos2}, {"OneMinus2Cos", th.one_minus_2cos}, {"R", th.r_val}, {"S", th.s_val}}}};
}

Outcome do_beta0(const Common& c, const std::string& theta_text, std::ostream& err) {
  note_double_only(c, err, "beta0");
  const Angle a = angle_arg(theta_text, "--theta");
  const auto th = beta0(a.radians);
  Json r = thresholds_json(th);
  r["theta"] = angle_json(a);
  return {kExitOk, envelope(kDoubleDigits, {{"theta", a.text}}, r), {}};
}

Outcome do_theta(const Common& c, const std::string& beta_text, std::ostream& err) {
  note_double_only(c, err, "theta");
  const auto beta = parse_full_double(trim(beta_text));
  if (!beta) throw UsageError("--beta: not a number: '" + beta_text + "'");
  const double theta = theta_of_beta(*beta);
  const auto probe = theta_branch_formulas(*beta);
  Json r = {{"beta", *beta},
            {"theta", angle_json(theta)},
            {"branch", to_string(beta0(theta).branch)},
            {"branch_formulas",
             {{"branch", probe.branch},
              {"table_branch", probe.table_branch},
              {"two_cos_theta", probe.bisected},
              {"printed", probe.printed},
              {"halved", probe.halved},
              {"printed_agrees", probe.printed_agrees},
              {"halved_agrees", probe.halved_agrees}}}};
  return {kExitOk, envelope(kDoubleDigits, {{"beta", beta_text}}, r), {}};
}

struct CertifyOpts {
  CoeffSource src;
  std::string theta;
  bool max = false;
  bool verify = false;
};

Outcome do_certify(const Common& c, const CertifyOpts& o, std::ostream& err) {
  note_double_only(c, err, "certify");
  if (o.theta.empty() == !o.max) throw UsageError("give exactly one of --theta or --max");
  const auto lits = load(o.src);
  const auto seq = to_double_seq(lits);
  Json in = source_json(o.src, lits);
  Json r;
  int code = kExitOk;
  std::optional<double> sector;  // the claimed |arg z| bound, for the oracle check
  if (o.max) {
    in["max"] = true;
    const auto m = max_certified_theta(seq);
    r = {{"kind", to_string(m.kind)}, {"min_beta", m.min_beta}};
    if (m.kind == MaxTheta::Kind::Refused) {
      code = kExitRefused;
    } else {
      r["theta"] = angle_json(m.theta);
      sector = m.theta;
    }
  } else {
    const Angle a = angle_arg(o.theta, "--theta");
    in["theta"] = a.text;
    const auto cert = certify_sector(seq, a.radians);
    const bool ok = cert.status == CertStatus::Certified;
    r = {{"status", ok ? "Certified" : "Refused"},
         {"theta", angle_json(a)},
         {"beta_required", cert.beta_required},
         {"min_beta", cert.min_beta_found},
         {"branch", to_string(cert.branch)},
         {"degree", cert.degree}};
    if (ok) {
      sector = a.radians;
    } else {
      r["reason"] = cert.reason;
      code = kExitRefused;
    }
  }
  if (o.verify) {
    in["verify"] = true;
    const auto rs = all_roots(seq);
    Json v = {{"converged", rs.converged}, {"min_arg", angle_json(rs.min_arg)}};
    if (sector) v["consistent"] = rs.converged && rs.min_arg > *sector - 1e-9;
    r["oracle"] = v;
  }
  return {code, envelope(kDoubleDigits, in, r), {}};
}

struct SharpOpts {
  std::string theta;
  std::string base;
  int n = 1000;
  int degree = 8;
};

Outcome do_sharpness(const Common& c, const SharpOpts& o, std::ostream& err) {
  note_double_only(c, err, "sharpness");
  const Angle a = angle_arg(o.theta, "--theta");
  std::string name = o.base;
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::tolower(ch); });
  SharpBase base{};
  try {
    base = parse_sharp_base(name);
  } catch (const Error&) {
    throw UsageError("--base must be one of G, H, J, K");
  }
  const auto seq = sharpness_family(a.radians, base, o.n, o.degree);
  const auto th = beta0(a.radians);
  const auto p = beta_profile(seq);

  std::vector<std::complex<double>> cc(seq.coeffs().begin(), seq.coeffs().end());
  const std::complex<double> target = std::polar(1.0, a.radians);
  const auto rs = all_roots<double>(cc);
  double nearest = std::numeric_limits<double>::infinity();
  for (const auto& z : rs.roots) nearest = std::min(nearest, std::abs(z - target));

  Json r = {{"theta", angle_json(a)},
            {"base", to_string(base)},
            {"n", o.n},
            {"degree", o.degree},
            {"coefficients", nums(seq.coeffs())},
            {"min_beta", p.min_beta},
            {"beta0", th.beta0},
            {"branch", to_string(th.branch)},
            {"residual_at_target", relative_residual<double>(cc, target)},
            {"nearest_root_distance", num(nearest)}};
  Json in = {{"theta", a.text}, {"base", o.base}, {"n", o.n}, {"degree", o.degree}};
  return {kExitOk, envelope(kDoubleDigits, in, r), {}};
}

struct KurtzOpts {
  CoeffSource src;
  bool annuli = false;
  bool real_chart = false;
  bool verify = false;
};

Json refused(const Error& e) {
  return {{"status", "Refused"}, {"code", to_string(e.code())}, {"reason", e.what()}};
}

Outcome do_kurtz(const Common& c, const KurtzOpts& o) {
  if (o.src.file.empty() && o.src.inline_text.empty()) {
    if (o.annuli || o.real_chart) throw UsageError("--annuli and --real-chart need coefficients");
    const int digits = resolve_digits(c, kDoubleDigits);
    const auto rep = kurtz_report();
    Json r;
    if (digits > kDoubleDigits) {
      PrecisionScope scope(digits + 10);
      r["constant"] = to_decimal(kurtz_constant<HpReal>(), digits);
    } else {
      r["constant"] = rep.beta0;
    }
    r["f_value"] = rep.f_value;
    r["residual"] = rep.residual;
    r["statement_form"] = {{"equation", "F^2 = beta"},
                           {"interval", {4.3, 4.5}},
                           {"min_f2", rep.alt_min_f2},
                           {"max_f2", rep.alt_max_f2},
                           {"has_root", rep.alt_has_root}};
    return {kExitOk, envelope(digits, Json::object(), r), {}};
  }

  const auto lits = load(o.src);
  Json in = source_json(o.src, lits);
  in["mode"] = o.real_chart ? "real-chart" : "annuli";
  try {
    if (o.real_chart) {
      const auto seq = to_double_seq(lits);
      const auto ch = real_root_chart(seq);
      Json w = Json::array();
      for (const auto& s : ch.witnesses) {
        w.push_back({{"k", s.k}, {"x", s.x}, {"value", s.value}, {"expected_sign", s.expected_sign}, {"ok", s.ok}});
      }
      Json intervals = Json::array();
      for (std::size_t i = 0; i < ch.lower.size(); ++i) intervals.push_back({ch.lower[i], ch.upper[i]});
      const bool ok = ch.ordered && ch.witnesses_ok;
      Json r = {{"status", ok ? "Certified" : "Refused"},
                {"root_intervals", intervals},
                {"j_intervals", pairs(ch.j_intervals)},
                {"witnesses", w},
                {"ordered", ch.ordered},
                {"witnesses_ok", ch.witnesses_ok}};
      if (o.verify) {
        const auto rs = all_roots(seq);
        std::vector<double> mags;
        for (const auto& z : rs.roots) mags.push_back(std::abs(z));
        std::sort(mags.begin(), mags.end());
        bool inside = mags.size() == ch.lower.size();
        for (std::size_t i = 0; inside && i < mags.size(); ++i) {
          inside = mags[i] >= ch.lower[i] * (1 - 1e-9) && mags[i] <= ch.upper[i] * (1 + 1e-9);
        }
        r["oracle"] = {{"converged", rs.converged},
                       {"all_real", all_real(rs, 1e-9)},
                       {"magnitudes", nums(mags)},
                       {"consistent", rs.converged && inside}};
      }
      return {ok ? kExitOk : kExitRefused, envelope(kDoubleDigits, in, r), {}};
    }

    const auto cc = to_complex_coeffs(lits);
    const auto ch = has_imaginary_part(lits) ? annulus_chart(cc) : annulus_chart(to_double_seq(lits));
    Json r = {{"status", ch.ordered ? "Certified" : "Refused"},
              {"beta_kurtz", ch.beta_kurtz},
              {"r", ch.r},
              {"F", ch.F},
              {"zero_free", pairs(ch.zero_free)},
              {"one_root", pairs(ch.one_root)},
              {"ordered", ch.ordered},
              {"real_coefficients", ch.real_coefficients},
              {"all_real_simple", ch.all_real_simple}};
    if (o.verify) {
      const auto rs = all_roots<double>(cc);
      Json one = Json::array();
      Json free = Json::array();
      bool consistent = rs.converged;
      for (const auto& [lo, hi] : ch.one_root) {
        try {
          const int k = count_in_annulus(rs, lo, hi);
          one.push_back(k);
          consistent = consistent && k == 1;
        } catch (const Error&) {
          one.push_back(nullptr);
          consistent = false;
        }
      }
      for (const auto& [lo, hi] : ch.zero_free) {
        const int k = count_in_closed_annulus(rs, lo, hi);
        free.push_back(k);
        consistent = consistent && k == 0;
      }
      r["oracle"] = {{"converged", rs.converged}, {"one_root_counts", one}, {"zero_free_counts", free},
                     {"consistent", consistent}};
    }
    return {ch.ordered ? kExitOk : kExitRefused, envelope(kDoubleDigits, in, r), {}};
  } catch (const Error& e) {
    if (e.code() != Errc::ProfileTooSmall && e.code() != Errc::KurtzConditionFails) throw;
    return {kExitRefused, envelope(kDoubleDigits, in, refused(e)), {}};
  }
}

template <class Real>
Json roots_result(const std::vector<complex_t<Real>>& a, int digits) {
  auto show = [digits](const Real& x) -> Json {
    if constexpr (std::is_same_v<Real, double>) {
      (void)digits;
      return num(x);
    } else {
      return to_decimal(x, digits);
    }
  };
  const auto rs = all_roots<Real>(a);
  Json list = Json::array();
  for (const auto& z : by_modulus(rs.roots)) {
    const Real res = relative_residual<Real>(a, z);
    list.push_back({{"re", show(z.real())}, {"im", show(z.imag())}, {"residual", num(static_cast<double>(res))}});
  }
  return {{"degree", rs.roots.size()},
          {"converged", rs.converged},
          {"iterations", rs.iterations},
          {"residual_bound", num(static_cast<double>(rs.residual_bound))},
          {"min_arg", angle_json(static_cast<double>(rs.min_arg))},
          {"roots", list}};
}

Outcome do_roots(const Common& c, const CoeffSource& src) {
  const auto lits = load(src);
  const int digits = resolve_digits(c, kDoubleDigits);
  Json r;
  if (digits == kDoubleDigits) {
    r = roots_result<double>(to_complex_coeffs(lits), digits);
  } else {
    PrecisionScope scope(digits);
    std::vector<complex_t<HpReal>> a;
    for (const auto& l : lits) a.emplace_back(parse_hp(l.re), l.im ? parse_hp(*l.im) : HpReal(0));
    r = roots_result<HpReal>(a, digits);
  }
  return {kExitOk, envelope(digits, source_json(src, lits), r), {}};
}

struct CrOpts {
  std::optional<int> critical;
  bool squeeze = false;
  int lmax = 11;
  std::vector<std::string> classify;
  std::vector<std::string> sign;
  bool table = false;
};

// Truncates a fixed-point rendering to `places` decimals, the way printed tables do.
std::string truncated(const HpReal& x, int places) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(places + 8) << x;
  std::string t = s.str();
  const auto dot = t.find('.');
  return dot == std::string::npos ? t : t.substr(0, dot + 1 + static_cast<std::size_t>(places));
}

Json base_json(const CriticalBase& cb, int digits) {
  return {{"l", cb.l},
          {"b0", to_decimal(cb.b0, digits)},
          {"x0", to_decimal(cb.x0, digits)},
          {"bound", cb.even ? "upper" : "lower"},
          {"triple", cb.triple},
          {"residual_f", to_decimal(cb.residual_f, 3)},
          {"residual_df", to_decimal(cb.residual_df, 3)},
          {"iterations", cb.iterations}};
}

Outcome do_constant_ratio(const Common& c, const CrOpts& o) {
  const int modes = (o.critical ? 1 : 0) + (o.squeeze ? 1 : 0) + (!o.classify.empty() ? 1 : 0) +
                    (!o.sign.empty() ? 1 : 0) + (o.table ? 1 : 0);
  if (modes != 1) throw UsageError("give exactly one of --critical, --squeeze, --classify, --sign-test, --table");
  const int digits = resolve_digits(c, kDefaultDigits);
  PrecisionScope scope(digits + 10);

  if (o.critical) {
    const auto cb = critical_base(*o.critical, digits);
    Json r = base_json(cb, digits);
    r["seed"] = {{"b", cb.seed_b}, {"x", cb.seed_x}};
    return {kExitOk, envelope(digits, {{"critical", *o.critical}}, r), {}};
  }
  if (o.squeeze) {
    const auto br = squeeze_b0(o.lmax, digits);
    Json bases = Json::array();
    for (const auto& cb : br.bases) bases.push_back(base_json(cb, digits));
    Json r = {{"lower", to_decimal(br.lower, digits)}, {"l_lower", br.l_lower},
              {"upper", to_decimal(br.upper, digits)}, {"l_upper", br.l_upper},
              {"width", to_decimal(br.width, 6)},      {"bases", bases}};
    return {kExitOk, envelope(digits, {{"squeeze", true}, {"lmax", o.lmax}}, r), {}};
  }
  if (!o.classify.empty()) {
    int degree = 0;
    const auto& dt = o.classify[1];
    const auto [p, ec] = std::from_chars(dt.data(), dt.data() + dt.size(), degree);
    if (ec != std::errc() || p != dt.data() + dt.size()) throw UsageError("--classify: degree is not an integer");
    const HpReal b = parse_hp(o.classify[0]);
    const auto cls = classify(b, degree, digits);
    Json r = {{"b", to_decimal(b, digits)}, {"degree", degree}, {"kind", to_string(cls.kind)}};
    r["l_witness"] = cls.l_witness ? Json(*cls.l_witness) : Json(nullptr);
    return {kExitOk, envelope(digits, {{"classify", o.classify}}, r), {}};
  }
  if (!o.sign.empty()) {
    int l = 0;
    const auto& lt = o.sign[1];
    const auto [p, ec] = std::from_chars(lt.data(), lt.data() + lt.size(), l);
    if (ec != std::errc() || p != lt.data() + lt.size()) throw UsageError("--sign-test: l is not an integer");
    const auto st = sign_test(parse_hp(o.sign[0]), l, digits);
    Json r = {{"l", l},
              {"outcome", to_string(st.outcome)},
              {"x", to_decimal(st.x, digits)},
              {"min_value", to_decimal(st.min_value, 6)}};
    return {kExitOk, envelope(digits, {{"sign_test", o.sign}}, r), {}};
  }

  // --table: the odd-l lower bounds and the even-l upper bounds, 25 decimals.
  if (o.lmax < 5 || o.lmax > 12) throw UsageError("--lmax must lie in 5..12");
  const auto br = squeeze_b0(o.lmax, digits);
  Json odd = Json::array();
  Json even = Json::array();
  std::ostringstream text;
  for (int parity : {1, 0}) {
    text << (parity ? "odd l (lower bounds)\n" : "even l (upper bounds)\n");
    for (const auto& cb : br.bases) {
      if (cb.l % 2 != parity) continue;
      const std::string b0 = truncated(cb.b0, 25);
      const std::string x0 = truncated(cb.x0, 6);
      (parity ? odd : even).push_back({{"l", cb.l}, {"b0", b0}, {"x0", x0}});
      text << "  l = " << std::setw(2) << cb.l << "   b0 = " << b0 << "   x0 = " << x0 << '\n';
    }
  }
  text << "B0 in [" << truncated(br.lower, 25) << ", " << truncated(br.upper, 25) << "], width "
       << to_decimal(br.width, 3) << '\n';
  Json r = {{"odd", odd}, {"even", even}, {"lower", to_decimal(br.lower, digits)},
            {"upper", to_decimal(br.upper, digits)}, {"width", to_decimal(br.width, 6)}};
  Outcome out{kExitOk, envelope(digits, {{"table", true}, {"lmax", o.lmax}}, r), {}};
  if (!c.output_given || c.output == "table") out.text = text.str();
  return out;
}

Outcome do_paradox(const Common& c) {
  const int digits = resolve_digits(c, kDefaultDigits);
  const auto rep = paradox_demo(digits);
  PrecisionScope scope(digits + 10);
  Json r = {{"nonreal_despite_large_ratios",
             {{"theta", angle_json(rep.theta)},
              {"coefficients", nums(rep.coeffs)},
              {"min_beta", rep.min_beta},
              {"nonreal_count", rep.nonreal_count},
              {"min_arg", angle_json(rep.min_arg)}}},
            {"real_with_constant_ratio",
             {{"b", "1.8"},
              {"degree", rep.degree},
              {"beta", to_decimal(rep.beta, digits)},
              {"max_beta_deviation", to_decimal(rep.max_beta_deviation, 3)},
              {"all_real", rep.all_real},
              {"max_relative_imag", to_decimal(rep.max_relative_imag, 3)}}}};
  return {kExitOk, envelope(digits, Json::object(), r), {}};
}

struct SweepOpts {
  std::string kind;
  std::string from;
  std::string to;
  std::size_t steps = 11;
  int degree = 30;
  unsigned threads = 0;
  bool csv = false;
  std::uint64_t seed = 1;
  std::size_t count = 1000;
  std::string theta = "3pi/4";
};

Outcome do_sweep(const Common& c, const SweepOpts& o, std::ostream& err) {
  const unsigned threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  std::ostringstream csv;
  csv.precision(17);
  Json in = {{"kind", o.kind}, {"threads", threads}};
  Json rows = Json::array();
  Json r;
  int digits = kDoubleDigits;
  int code = kExitOk;

  if (o.kind == "theta") {
    note_double_only(c, err, "sweep theta");
    const Angle lo = angle_arg(o.from.empty() ? "pi/2" : o.from, "--from");
    const Angle hi = angle_arg(o.to.empty() ? "0.99pi" : o.to, "--to");
    in.update({{"from", lo.text}, {"to", hi.text}, {"steps", o.steps}});
    csv << "index,theta,theta_over_pi,beta0,branch,theta_back\n";
    for (const auto& row : theta_sweep(lo.radians, hi.radians, o.steps, threads)) {
      const auto& th = row.thresholds;
      rows.push_back({{"index", row.index}, {"theta", angle_json(th.theta)}, {"beta0", th.beta0},
                      {"branch", to_string(th.branch)}, {"theta_back", row.theta_back}});
      csv << row.index << ',' << th.theta << ',' << th.theta / kPi << ',' << th.beta0 << ','
          << to_string(th.branch) << ',' << row.theta_back << '\n';
    }
    r["rows"] = rows;
  } else if (o.kind == "base") {
    digits = resolve_digits(c, kDefaultDigits);
    const std::string lo = o.from.empty() ? "1.74" : o.from;
    const std::string hi = o.to.empty() ? "1.86" : o.to;
    in.update({{"from", lo}, {"to", hi}, {"steps", o.steps}, {"degree", o.degree}});
    csv << "index,b,degree,kind,l_witness\n";
    for (const auto& row : base_sweep(lo, hi, o.steps, o.degree, digits, threads)) {
      Json lw = row.cls.l_witness ? Json(*row.cls.l_witness) : Json(nullptr);
      rows.push_back({{"index", row.index}, {"b", row.b}, {"kind", to_string(row.cls.kind)}, {"l_witness", lw}});
      csv << row.index << ',' << row.b << ',' << o.degree << ',' << to_string(row.cls.kind) << ','
          << (row.cls.l_witness ? std::to_string(*row.cls.l_witness) : "") << '\n';
    }
    r["rows"] = rows;
  } else {
    note_double_only(c, err, "sweep random");
    const Angle a = angle_arg(o.theta, "--theta");
    in.update({{"theta", a.text}, {"count", o.count}, {"seed", o.seed}});
    const auto rep = soundness_sweep(a.radians, o.count, o.seed, threads);
    csv << "index,degree,min_beta,min_arg,attempts,ok\n";
    for (const auto& cs : rep.cases) {
      rows.push_back({{"index", cs.index}, {"degree", cs.degree}, {"min_beta", cs.min_beta},
                      {"min_arg", cs.min_arg}, {"ok", cs.ok}});
      csv << cs.index << ',' << cs.degree << ',' << cs.min_beta << ',' << cs.min_arg << ',' << cs.attempts << ','
          << (cs.ok ? 1 : 0) << '\n';
    }
    r = {{"theta", angle_json(a)},
         {"beta_required", rep.beta_required},
         {"cases", rep.cases.size()},
         {"rejected_draws", rep.rejected},
         {"failures", rep.failures},
         {"worst_margin", num(rep.worst_margin)},
         {"rows", rows}};
    if (rep.failures > 0) {
      err << "lcz: " << rep.failures << " certified instance(s) have a root outside the sector\n";
      code = kExitError;
    }
  }
  Outcome out{code, envelope(digits, in, r), {}};
  if (o.csv) out.text = csv.str();
  return out;
}

}  // namespace

Angle parse_angle(std::string_view text) {
  static const std::regex kPiForm(
      R"(^([+-]?)\s*((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*(?:pi|PI|Pi|π)\s*(?:/\s*(\d+\.?\d*|\.\d+))?$)");
  Angle a;
  a.text = std::string(text);
  const std::string s = trim(text);
  std::smatch m;
  if (std::regex_match(s, m, kPiForm)) {
    double frac = m[2].matched ? *parse_full_double(m[2].str()) : 1.0;
    if (m[3].matched) {
      const double den = *parse_full_double(m[3].str());
      if (den == 0) throw std::invalid_argument("division by zero");
      frac /= den;
    }
    if (m[1].str() == "-") frac = -frac;
    a.pi_fraction = frac;
    a.radians = frac * kPi;
    return a;
  }
  const auto v = parse_full_double(s);
  if (!v || !std::isfinite(*v)) throw std::invalid_argument("not an angle");
  a.radians = *v;
  a.pi_fraction = *v / kPi;
  return a;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Root localization from coefficient ratios", "lcz"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--digits", common.digits, "working precision in significant digits (default 15, or 50 for constant-ratio work; env LCZ_DIGITS)");
  auto* output_opt = app.add_option("--output", common.output, "json or table")->check(CLI::IsMember({"json", "table"}));

  BetaOpts beta_o;
  auto* beta_cmd = app.add_subcommand("beta", "ratios beta_j = c_j^2 / (c_{j+1} c_{j-1})");
  add_coeff_options(beta_cmd, beta_o.src);
  beta_cmd->add_flag("--moduli", beta_o.moduli, "use |c_j| (implied for complex coefficients)");

  std::string beta0_theta;
  auto* beta0_cmd = app.add_subcommand("beta0", "least ratio bound forcing every zero into |arg z| > theta");
  beta0_cmd->add_option("--theta", beta0_theta, "angle, e.g. 0.75pi, 3pi/4 or radians")->required();

  std::string theta_beta;
  auto* theta_cmd = app.add_subcommand("theta", "the sector angle guaranteed by a ratio bound");
  theta_cmd->add_option("--beta", theta_beta, "ratio bound")->required();

  CertifyOpts cert_o;
  auto* cert_cmd = app.add_subcommand("certify", "certify |arg z| > theta from the ratios alone");
  add_coeff_options(cert_cmd, cert_o.src);
  cert_cmd->add_option("--theta", cert_o.theta, "angle to certify");
  cert_cmd->add_flag("--max", cert_o.max, "report the largest certifiable angle instead");
  cert_cmd->add_flag("--verify", cert_o.verify, "cross-check against the numerical root oracle");

  SharpOpts sharp_o;
  auto* sharp_cmd = app.add_subcommand("sharpness", "extremal family vanishing at e^{i theta}");
  sharp_cmd->add_option("--theta", sharp_o.theta, "angle")->required();
  sharp_cmd->add_option("--base", sharp_o.base, "G, H, J or K")->required();
  sharp_cmd->add_option("--n", sharp_o.n, "tail parameter")->capture_default_str();
  sharp_cmd->add_option("--degree", sharp_o.degree, "truncation degree")->capture_default_str();

  KurtzOpts kurtz_o;
  auto* kurtz_cmd = app.add_subcommand("kurtz", "the extended Kurtz constant, annulus and real-root charts");
  add_coeff_options(kurtz_cmd, kurtz_o.src);
  auto* ann = kurtz_cmd->add_flag("--annuli", kurtz_o.annuli, "annuli each holding one zero (default with coefficients)");
  auto* rc = kurtz_cmd->add_flag("--real-chart", kurtz_o.real_chart, "intervals for the real zeros when every ratio is at least 4");
  ann->excludes(rc);
  kurtz_cmd->add_flag("--verify", kurtz_o.verify, "cross-check against the numerical root oracle");

  CoeffSource roots_src;
  auto* roots_cmd = app.add_subcommand("roots", "all zeros by simultaneous iteration");
  add_coeff_options(roots_cmd, roots_src);

  CrOpts cr_o;
  auto* cr_cmd = app.add_subcommand("constant-ratio", "the family sum x^j b^{-j(j+1)} and its critical base");
  cr_cmd->add_option("--critical", cr_o.critical, "critical base b0(l)");
  cr_cmd->add_flag("--squeeze", cr_o.squeeze, "bracket the limit between odd and even l");
  cr_cmd->add_option("--lmax", cr_o.lmax, "largest l for --squeeze and --table")->capture_default_str();
  cr_cmd->add_option("--classify", cr_o.classify, "B N: are the zeros of f_{B,N} real?")->expected(2);
  cr_cmd->add_option("--sign-test", cr_o.sign, "B L: sign test of f_{B,L}(-x) on (0, B^4)")->expected(2);
  cr_cmd->add_flag("--table", cr_o.table, "both tables of critical bases");

  auto* paradox_cmd = app.add_subcommand("demo-paradox", "large ratios with nonreal zeros next to small ratios with real ones");

  SweepOpts sweep_o;
  auto* sweep_cmd = app.add_subcommand("sweep", "grid or random sweeps, merged in index order");
  sweep_cmd->add_option("kind", sweep_o.kind, "theta, base or random")->required()->check(CLI::IsMember({"theta", "base", "random"}));
  sweep_cmd->add_option("--from", sweep_o.from, "grid start");
  sweep_cmd->add_option("--to", sweep_o.to, "grid end");
  sweep_cmd->add_option("--steps", sweep_o.steps, "grid points")->capture_default_str();
  sweep_cmd->add_option("--degree", sweep_o.degree, "degree for base sweeps")->capture_default_str();
  sweep_cmd->add_option("--threads", sweep_o.threads, "worker threads (0 = all cores)");
  sweep_cmd->add_flag("--csv", sweep_o.csv, "emit CSV instead of JSON");
  sweep_cmd->add_option("--seed", sweep_o.seed, "seed for random sweeps")->capture_default_str();
  sweep_cmd->add_option("--count", sweep_o.count, "instances for random sweeps")->capture_default_str();
  sweep_cmd->add_option("--theta", sweep_o.theta, "angle for random sweeps")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "lcz: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }
  common.output_given = output_opt->count() > 0;

  try {
    Outcome o;
    if (*beta_cmd) {
      o = do_beta(common, beta_o);
    } else if (*beta0_cmd) {
      o = do_beta0(common, beta0_theta, err);
    } else if (*theta_cmd) {
      o = do_theta(common, theta_beta, err);
    } else if (*cert_cmd) {
      o = do_certify(common, cert_o, err);
    } else if (*sharp_cmd) {
      o = do_sharpness(common, sharp_o, err);
    } else if (*kurtz_cmd) {
      o = do_kurtz(common, kurtz_o);
    } else if (*roots_cmd) {
      o = do_roots(common, roots_src);
    } else if (*cr_cmd) {
      o = do_constant_ratio(common, cr_o);
    } else if (*paradox_cmd) {
      o = do_paradox(common);
    } else {
      o = do_sweep(common, sweep_o, err);
    }
    if (!o.text.empty()) {
      out << o.text;
    } else if (common.output == "table") {
      out << render_table(o.report);
    } else {
      out << o.report.dump(2) << '\n';
    }
    return o.code;
  } catch (const UsageError& e) {
    err << "lcz: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "lcz: error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "lcz: error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace lcz::cli
