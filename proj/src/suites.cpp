// Copyright 2026 The entbreak Authors
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

#include "entbreak/suites.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <locale>
#include <sstream>

#include "entbreak/random.hpp"
#include "entbreak/reference_states.hpp"

namespace entbreak {
namespace {

constexpr std::uint64_t kTauStream = 0x746175ULL;

CertReport new_report(const std::string& suite, const SuiteConfig& config) {
  CertReport rep;
  rep.suite = suite;
  rep.environment.version = library_version();
  rep.environment.seed = config.seed;
  rep.environment.tolerances = config.tol.as_map();
  return rep;
}

std::string twelve_digits(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(12) << v;
  return os.str();
}

Json certification_json(const Certification& c) {
  return {{"t_star", c.t_star},
          {"dual_bound", c.dual_bound},
          {"certified", c.certified},
          {"status", sdp::to_string(c.status)},
          {"iterations", c.iterations},
          {"support_dim", c.support_dim},
          {"constraints", c.total_constraints},
          {"independent_constraints", c.independent_constraints},
          {"primal_feasibility", c.certificate.primal_feasibility},
          {"primal_min_eig", c.certificate.primal_min_eig},
          {"dual_min_eig", c.certificate.dual_min_eig},
          {"dual_feasibility", c.certificate.dual_feasibility},
          {"slack_mismatch", c.certificate.slack_mismatch},
          {"gap", c.certificate.gap},
          {"full_primal_feasibility", c.full_primal_feasibility}};
}

bool residuals_ok(const Certification& c, double tol) {
  return c.status == sdp::Status::kOptimal && c.certificate.passed(tol) &&
         c.full_primal_feasibility <= tol;
}

// Certified entangled: valid certificate with bound below -tol.certify.
bool certified(const Certification& c, const Tolerances& tol) {
  return residuals_ok(c, tol.residual) && c.dual_bound < -tol.certify;
}

double min_pt(const DenseMatrix& rho) {
  return min_pt_eigenvalue(rho, rho.layout.labels().back());
}

void add_observation_checks(CertReport& rep, const DenseMatrix& rho, const Tolerances& tol,
                            const std::string& prefix) {
  const DenseMatrix rho_a = partial_trace(rho, {"A"});
  const double obs1 =
      spectral_norm<double>(rho_a.data - CMatrix::Identity(2, 2) / 2.0);
  rep.add({prefix + "obs1", "A-marginal is maximally mixed", {{"error", obs1}}, tol.obs1,
           Provenance::kPaper, obs1 <= tol.obs1});

  const double ab = min_pt(partial_trace(rho, {"A", "B"}));
  const double ac = min_pt(partial_trace(rho, {"A", "C"}));
  rep.add({prefix + "obs2",
           "AB and AC marginals have partial-transpose minima 0 and 0.00206",
           {{"min_pt_ab", ab}, {"min_pt_ac", ac}, {"expected_ab", 0.0},
            {"expected_ac", kPrintedObs2Ac}, {"tol_ab", tol.obs2_ab}, {"tol_ac", tol.obs2_ac}},
           std::max(tol.obs2_ab, tol.obs2_ac),
           Provenance::kPaper,
           std::abs(ab) <= tol.obs2_ab && std::abs(ac - kPrintedObs2Ac) <= tol.obs2_ac});

  const Certification cert = certify_metatransitivity(observation_spec(rho), tol.certify);
  rep.add({prefix + "obs3", "every extension of the AB and AC marginals is entangled in BC",
           certification_json(cert), -tol.certify, Provenance::kPaper, certified(cert, tol)});
}

DenseMatrix normalized_projector(const StateVector& v) {
  DenseMatrix rho = projector(v);
  rho.data /= rho.trace().real();
  return rho;
}

Channel realization_from(const std::string& realization) {
  if (realization == "canonical") return states::broadcast_channel();
  if (realization.rfind("seed:", 0) == 0) {
    std::uint64_t seed = 0;
    std::istringstream is(realization.substr(5));
    is.imbue(std::locale::classic());
    if (!(is >> seed) || !is.eof())
      throw ValidationError("realization seed must be a non-negative integer: '" + realization + "'");
    const DenseMatrix eta = random_extension(observation_spec(states::rho_abc()), seed);
    return channel_from_state(eta);
  }
  throw ValidationError("realization must be 'canonical' or 'seed:N', got '" + realization + "'");
}

// Closed-form smallest eigenvalue of a 2x2 Hermitian matrix.
double min_eig_2x2(const CMatrix& m) {
  const double a = m(0, 0).real(), d = m(1, 1).real();
  return 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
}

template <typename F>
CertReport timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  CertReport rep = f();
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

Tolerances Tolerances::strict() {
  Tolerances t;
  t.obs1 = 1e-14;
  t.kraus = 1e-12;
  t.psucc = 1e-12;
  t.choi_valid = 1e-12;
  t.norm = 1e-12;
  t.marginal = 1e-12;
  return t;
}

Tolerances Tolerances::profile(const std::string& name) {
  if (name.empty() || name == "default") return {};
  if (name == "strict") return strict();
  throw ValidationError("unknown tolerance profile '" + name + "' (expected default or strict)");
}

std::map<std::string, double> Tolerances::as_map() const {
  return {{"obs1", obs1},
          {"obs2_ab", obs2_ab},
          {"obs2_ac", obs2_ac},
          {"certify", certify},
          {"residual", residual},
          {"choi_printed", choi_printed},
          {"choi_eig", choi_eig},
          {"kraus", kraus},
          {"psucc", psucc},
          {"choi_valid", choi_valid},
          {"sweep_nonpositive", sweep_nonpositive},
          {"sweep_zero", sweep_zero},
          {"sweep_fraction", sweep_fraction},
          {"norm", norm},
          {"marginal", marginal},
          {"ppt", ppt},
          {"tomography", tomography},
          {"entangled", entangled}};
}

bool Tolerances::set(const std::string& name, double value) {
  std::map<std::string, double*> fields{{"obs1", &obs1},
                                        {"obs2_ab", &obs2_ab},
                                        {"obs2_ac", &obs2_ac},
                                        {"certify", &certify},
                                        {"residual", &residual},
                                        {"choi_printed", &choi_printed},
                                        {"choi_eig", &choi_eig},
                                        {"kraus", &kraus},
                                        {"psucc", &psucc},
                                        {"choi_valid", &choi_valid},
                                        {"sweep_nonpositive", &sweep_nonpositive},
                                        {"sweep_zero", &sweep_zero},
                                        {"sweep_fraction", &sweep_fraction},
                                        {"norm", &norm},
                                        {"marginal", &marginal},
                                        {"ppt", &ppt},
                                        {"tomography", &tomography},
                                        {"entangled", &entangled}};
  if (name == "obs2") {
    obs2_ab = obs2_ac = value;
    return true;
  }
  const auto it = fields.find(name);
  if (it == fields.end()) return false;
  *it->second = value;
  return true;
}

MarginalSpec observation_spec(const DenseMatrix& rho_abc) {
  return MarginalSpec::from_state(rho_abc, {{"A", "B"}, {"A", "C"}}, {"B", "C"});
}

CMatrix printed_m_choi() {
  CMatrix m(4, 4);
  m << 0.1896, -0.0015, 0, 0.1888,
       -0.0015, 0.3104, 0.3075, 0,
       0, 0.3075, 0.3104, -0.0015,
       0.1888, 0, -0.0015, 0.1896;
  return m;
}

CertReport cmd_observations(const SuiteConfig& config) {
  CertReport rep = new_report("observations", config);
  const DenseMatrix rho = states::rho_abc();
  add_observation_checks(rep, rho, config.tol, "");
  rep.data["min_pt_rho_bc"] = min_pt(partial_trace(rho, {"B", "C"}));
  return rep;
}

CertReport cmd_superactivate(const std::string& realization, const SuiteConfig& config) {
  CertReport rep = new_report("superactivate", config);
  const Tolerances& tol = config.tol;
  const Channel N = realization_from(realization);
  const Pipeline P = make_pipeline(N);
  const Channel& E = P.eb_channel_B;
  const DenseMatrix rho_bc = partial_trace(N.choi(), N.out_labels());
  rep.data["realization"] = realization;

  const double alpha_oracle = min_eig_2x2(partial_trace(rho_bc, {"B"}).data);
  rep.add({"alpha", "alpha is the smallest eigenvalue of E(I/2) and lies in (0, 1/2]",
           {{"alpha", P.alpha}, {"closed_form", alpha_oracle}}, 1e-12, Provenance::kDerived,
           P.alpha > 0.0 && P.alpha <= 0.5 + 1e-12 && std::abs(P.alpha - alpha_oracle) <= 1e-12});

  const double step2 = P.L_B.success_probability(rho_bc);
  rep.add({"step2_success", "Step-2 filter succeeds with probability 2 alpha",
           {{"success", step2}, {"two_alpha", 2.0 * P.alpha}}, tol.psucc, Provenance::kPaper,
           std::abs(step2 - 2.0 * P.alpha) <= tol.psucc});

  Rng rng = make_rng(config.seed, kTauStream);
  const SubsystemLayout a = SubsystemLayout::qubits({kFreshInput});
  double psucc_dev = 0.0;
  for (int k = 0; k < 100; ++k) {
    const DenseMatrix tau = random_density(a, rng);
    psucc_dev = std::max(psucc_dev,
                         std::abs(P.K_AB.success_probability(tensor_product(tau, rho_bc)) -
                                  P.p_succ()));
  }
  rep.add({"p_succ", "combined success probability is alpha/2 for 100 random inputs",
           {{"p_succ", P.p_succ()}, {"alpha", P.alpha}, {"max_deviation", psucc_dev}}, tol.psucc,
           Provenance::kPaper, psucc_dev <= tol.psucc});

  const Channel M = superactivated_map(N, E);
  const DenseMatrix J = m_choi(N, E);
  const LinearMap action = superactivated_action(N, E);
  const auto gammas = kraus_gamma(rho_bc);
  double trace_dev = 0.0, kraus_dev = 0.0;
  for (int k = 0; k < 20; ++k) {
    const DenseMatrix tau = random_density(a, rng);
    const DenseMatrix out = action(tau);
    trace_dev = std::max(trace_dev, std::abs(out.trace().real() - 1.0));
    kraus_dev =
        std::max(kraus_dev, (apply_kraus(gammas, tau).data - out.data).cwiseAbs().maxCoeff());
  }
  rep.add({"trace_preservation", "M(tau) has unit trace for 20 random inputs",
           {{"max_deviation", trace_dev}}, 1e-10, Provenance::kTrivial, trace_dev <= 1e-10});

  const double formula_err = (M.choi().data - J.data).cwiseAbs().maxCoeff();
  rep.add({"choi_formulas", "Choi state of M equals (L x I) N(I/2) (L x I)^dag / (2 alpha)",
           {{"max_error", formula_err}}, 1e-10, Provenance::kDerived, formula_err <= 1e-10});

  const double completeness = completeness_error(gammas);
  rep.add({"kraus_completeness", "sum_j Gamma_j^dag Gamma_j = I",
           {{"error", completeness}, {"count", gammas.size()}}, tol.kraus, Provenance::kPaper,
           completeness <= tol.kraus});

  const double kraus_choi_err =
      (choi_of_kraus(gammas, J.layout.labels()[0]).data - J.data).cwiseAbs().maxCoeff();
  rep.add({"kraus_map", "Kraus form agrees with M on 20 random inputs and on the Choi state",
           {{"max_error_inputs", kraus_dev}, {"max_error_choi", kraus_choi_err}}, tol.kraus,
           Provenance::kDerived, kraus_dev <= tol.kraus && kraus_choi_err <= tol.kraus});

  const double lmin = min_pt(J);
  if (realization == "canonical") {
    const double printed_err = (J.data - printed_m_choi()).cwiseAbs().maxCoeff();
    rep.add({"choi_printed", "Choi state of M matches the printed 4x4 matrix element-wise",
             {{"max_error", printed_err}}, tol.choi_printed, Provenance::kPaper,
             printed_err <= tol.choi_printed});
    rep.add({"choi_min_pt", "partial transpose of M's Choi state has eigenvalue -0.1179",
             {{"min_pt_eig", lmin}, {"expected", kPrintedMinPtEig}}, tol.choi_eig,
             Provenance::kPaper, std::abs(lmin - kPrintedMinPtEig) <= tol.choi_eig});
  }

  CertReport fact1 = verify_fact1(N, E);
  for (auto& c : fact1.checks) rep.add(std::move(c));

  rep.data["alpha"] = P.alpha;
  rep.data["p_succ"] = P.p_succ();
  rep.data["choi"] = matrix_json(J.data);
  rep.data["min_pt_eig"] = lmin;
  rep.data["kraus_count"] = gammas.size();
  return rep;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(12);
  out << "z,phi,min_pt_eig\n";
  for (const auto& p : points) out << p.z << ',' << p.phi << ',' << p.min_pt_eig << '\n';
  os << out.str();
}

CertReport cmd_sweep(int grid_n, const std::string& out_path, const SuiteConfig& config) {
  CertReport rep = new_report("sweep", config);
  const Tolerances& tol = config.tol;
  const Channel ch = states::broadcast_channel();
  const auto points = sweep_output_entanglement(ch, grid_n);
  if (!out_path.empty()) {
    std::ofstream os(out_path);
    if (!os) throw Error("cannot open '" + out_path + "' for writing");
    write_sweep_csv(os, points);
    if (!os) throw Error("failed writing '" + out_path + "'");
  }
  double max_value = -std::numeric_limits<double>::infinity();
  std::size_t negative = 0;
  for (const auto& p : points) {
    max_value = std::max(max_value, p.min_pt_eig);
    if (p.min_pt_eig < -1e-9) ++negative;
  }
  const double fraction = double(negative) / double(points.size());
  rep.add({"sweep_nonpositive", "every grid value is at most 1e-9", {{"max_value", max_value}},
           tol.sweep_nonpositive, Provenance::kDerived, max_value <= tol.sweep_nonpositive});
  for (const double z : {0.25, 0.75}) {
    const SweepPoint best = max_along_z(ch, z, grid_n);
    const std::string id = z == 0.25 ? "sweep_zero_z025" : "sweep_zero_z075";
    rep.add({id, "the minimum eigenvalue touches zero along z = " + twelve_digits(z),
             {{"z", z}, {"phi", best.phi}, {"value", best.min_pt_eig}}, tol.sweep_zero,
             Provenance::kPaper, std::abs(best.min_pt_eig) <= tol.sweep_zero});
  }
  rep.add({"sweep_generic", "fraction of grid points strictly below -1e-9",
           {{"fraction", fraction}, {"points", points.size()}}, tol.sweep_fraction,
           Provenance::kDerived, fraction >= tol.sweep_fraction});
  rep.data["grid_n"] = grid_n;
  rep.data["rows"] = points.size();
  if (!out_path.empty()) rep.data["csv"] = out_path;
  return rep;
}

CertReport cmd_family(const std::vector<double>& q_list, const SuiteConfig& config) {
  CertReport rep = new_report("family", config);
  const Tolerances& tol = config.tol;
  rep.data["members"] = Json::array();
  for (const double q : q_list) {
    const states::FamilyParams params = states::FamilyParams::from_q(q);
    const DenseMatrix rho = states::rho_abc_family(q);
    const std::string prefix = "q=" + twelve_digits(q) + "/";

    std::string choi_error;
    double in_err = 0.0;
    try {
      const Channel ch(rho);
      in_err = spectral_norm<double>(partial_trace(rho, {"A"}).data -
                                     CMatrix::Identity(2, 2) / 2.0);
    } catch (const Error& e) {
      choi_error = e.what();
    }
    rep.add({prefix + "choi_valid", "family member is a valid Choi state",
             {{"input_marginal_error", in_err}, {"error", choi_error}}, tol.choi_valid,
             Provenance::kTrivial, choi_error.empty() && in_err <= tol.choi_valid});

    const double ab = min_pt(partial_trace(rho, {"A", "B"}));
    const double ac = min_pt(partial_trace(rho, {"A", "C"}));
    const Certification cert = certify_metatransitivity(observation_spec(rho), tol.certify);
    Json verdict = {{"min_pt_ab", ab},
                    {"min_pt_ac", ac},
                    {"ppt_ab", ab >= -tol::kPptSeparable},
                    {"ppt_ac", ac >= -tol::kPptSeparable},
                    {"metatransitive_bc", certified(cert, tol)},
                    {"certificate", certification_json(cert)}};
    rep.add({prefix + "verdicts", "separability and metatransitivity verdicts with certificate",
             verdict, tol.residual, Provenance::kDerived, residuals_ok(cert, tol.residual)});

    if (q == 1.0) {
      const double err = (rho.data - states::rho_abc().data).cwiseAbs().maxCoeff();
      CertReport obs;
      add_observation_checks(obs, rho, tol, "");
      bool all = err <= 1e-12;
      Json values = {{"state_error", err}};
      for (const auto& c : obs.checks) {
        all = all && c.pass;
        values[c.id] = c.pass;
      }
      rep.add({prefix + "reproduces_observations",
               "q = 1 reproduces the reference state and its three observations", values, 1e-12,
               Provenance::kPaper, all});
    }
    rep.data["members"].push_back({{"q", q},
                                   {"x", twelve_digits(params.x)},
                                   {"p", twelve_digits(params.p)},
                                   {"min_pt_ab", ab},
                                   {"min_pt_ac", ac},
                                   {"t_star", cert.t_star},
                                   {"dual_bound", cert.dual_bound},
                                   {"certified", certified(cert, tol)}});
  }
  return rep;
}

CertReport cmd_fourqubit(char which, const SuiteConfig& config) {
  if (which != 'a' && which != 'b')
    throw ValidationError(std::string("four-qubit case must be 'a' or 'b', got '") + which + "'");
  const Tolerances& tol = config.tol;
  CertReport rep = new_report(std::string("fourqubit_") + which, config);
  const StateVector v = which == 'a' ? states::four_qubit_xi() : states::four_qubit_sigma();
  const DenseMatrix rho = normalized_projector(v);

  const double norm_err = std::abs(v.norm() - 1.0);
  rep.add({"normalized", "printed vector has unit norm", {{"error", norm_err}}, tol.norm,
           Provenance::kPaper, norm_err <= tol.norm});
  const double a_err =
      spectral_norm<double>(partial_trace(rho, {"A"}).data - CMatrix::Identity(2, 2) / 2.0);
  rep.add({"a_marginal", "A-marginal is maximally mixed", {{"error", a_err}}, tol.marginal,
           Provenance::kPaper, a_err <= tol.marginal});

  const std::vector<LabelList> fixed =
      which == 'a' ? std::vector<LabelList>{{"A", "B"}, {"A", "C"}, {"A", "D"}}
                   : std::vector<LabelList>{{"A", "B"}, {"A", "C"}, {"C", "D"}};
  for (const auto& pair : fixed) {
    const double lmin = min_pt(partial_trace(rho, pair));
    rep.add({"ppt_" + pair[0] + pair[1], pair[0] + pair[1] + " marginal is PPT",
             {{"min_pt_eig", lmin}}, tol.ppt, Provenance::kPaper, lmin >= -tol.ppt});
  }

  const std::vector<std::array<std::string, 2>> targets =
      which == 'a' ? std::vector<std::array<std::string, 2>>{{"B", "C"}, {"B", "D"}, {"C", "D"}}
                   : std::vector<std::array<std::string, 2>>{{"A", "D"}};
  for (const auto& t : targets) {
    const Certification cert =
        certify_metatransitivity(MarginalSpec::from_state(rho, fixed, t), tol.certify);
    rep.add({"meta_" + t[0] + t[1],
             "every extension of the fixed marginals is entangled in " + t[0] + t[1],
             certification_json(cert), -tol.certify, Provenance::kPaper, certified(cert, tol)});
  }

  if (which == 'b') {
    const DenseMatrix sigma_cd = partial_trace(rho, {"C", "D"});
    const MarginalSpec with_cd = MarginalSpec::from_state(rho, fixed, {"A", "D"});
    const MarginalSpec without_cd =
        MarginalSpec::from_state(rho, {{"A", "B"}, {"A", "C"}}, {"A", "D"});

    auto protocol = [&](const DenseMatrix& eta) {
      return deterministic_protocol_check(channel_from_state(eta), sigma_cd, tol.tomography);
    };
    auto protocol_values = [](const CertReport& r) {
      Json j = {{"verified", r.data["verified"]},
                {"distance", r.find("protocol_verification").values["distance"]}};
      if (r.has("protocol_memory")) j["min_pt_eig_ad"] = r.find("protocol_memory").values["min_pt_eig"];
      return j;
    };

    const CertReport on_sigma = protocol(rho);
    rep.add({"protocol_sigma", "deterministic protocol verifies CD and yields memory on AD",
             protocol_values(on_sigma), tol.tomography, Provenance::kPaper, on_sigma.passed()});

    const CertReport on_extension = protocol(random_extension(with_cd, config.seed));
    rep.add({"protocol_random_extension",
             "protocol passes on a random extension satisfying the CD constraint",
             protocol_values(on_extension), tol.tomography, Provenance::kDerived,
             on_extension.passed()});

    // Extension that keeps AB and AC but pushes CD away from sigma_CD.
    const CMatrix w = -extend_operator(sigma_cd, rho.layout).data;
    const CertReport control = protocol(extension_with_objective(without_cd, w));
    const bool control_rejected = !control.data["verified"].get<bool>();
    rep.add({"protocol_control",
             "protocol rejects an extension that violates the CD constraint",
             protocol_values(control), tol.tomography, Provenance::kDerived, control_rejected});

    const Certification dropped = certify_metatransitivity(without_cd, tol.certify);
    rep.add({"meta_AD_without_CD", "AD certification fails once the CD constraint is dropped",
             certification_json(dropped), -tol.certify, Provenance::kDerived,
             residuals_ok(dropped, tol.residual) && !certified(dropped, tol)});
  }
  return rep;
}

CertReport cmd_all(const SuiteConfig& config, bool parallel) {
  std::vector<std::function<CertReport()>> jobs{
      [&] { return cmd_observations(config); },
      [&] { return cmd_superactivate("canonical", config); },
      [&] { return cmd_superactivate("seed:" + std::to_string(config.seed), config); },
      [&] { return cmd_sweep(101, "", config); },
      [&] { return cmd_family({0.0, 0.25, 0.5, 0.75, 1.0}, config); },
      [&] { return cmd_fourqubit('a', config); },
      [&] { return cmd_fourqubit('b', config); },
  };
  CertReport rep = new_report("all", config);
  const auto t0 = std::chrono::steady_clock::now();
  if (parallel) {
    std::vector<std::future<CertReport>> futures;
    for (auto& job : jobs)
      futures.push_back(std::async(std::launch::async, [&job] { return timed(job); }));
    for (auto& f : futures) rep.suites.push_back(f.get());
  } else {
    for (auto& job : jobs) rep.suites.push_back(timed(job));
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace entbreak
