#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "urnmise/config.hpp"
#include "urnmise/experiment.hpp"
#include "urnmise/gibbs.hpp"
#include "urnmise/logspace.hpp"
#include "urnmise/model.hpp"
#include "urnmise/rates.hpp"

namespace py = pybind11;
using namespace urnmise;

namespace {

TrueDensity make_true_density(double k, double a, double c,
                              const std::vector<std::pair<double, double>>& atoms) {
  TrueDensity td;
  td.k = k;
  td.a = a;
  td.c = c;
  td.f0.clear();
  for (const auto& [loc, w] : atoms) td.f0.push_back({loc, w});
  td.validate();
  return td;
}

RateTerms py_rate_terms(double n, const ParamSchedules& sched, const BasePrior& bp,
                        std::optional<double> p) {
  return rate_terms(RateInputs{n, sched, bp, p});
}

}  // namespace

PYBIND11_MODULE(_urnmise, m) {
  m.doc() = "Polya-urn mixture density estimators, Gibbs samplers and MISE rate bounds";

  py::class_<BasePrior>(m, "BasePrior")
      .def(py::init<double, double>(), py::arg("mu0") = 2.0, py::arg("sigma0") = 1.0)
      .def_readwrite("mu0", &BasePrior::mu0)
      .def_readwrite("sigma0", &BasePrior::sigma0);

  py::class_<TrueDensity>(m, "TrueDensity")
      .def(py::init(&make_true_density), py::arg("k") = 1.0, py::arg("a") = 1.0,
           py::arg("c") = 0.5,
           py::arg("atoms") = std::vector<std::pair<double, double>>{{0.0, 1.0}})
      .def_readonly("k", &TrueDensity::k)
      .def_readonly("a", &TrueDensity::a)
      .def_readonly("c", &TrueDensity::c);

  py::class_<ParamSchedules>(m, "ParamSchedules")
      .def(py::init([](double omega, double b, double t, double r, double c1, double k, double a,
                       double c, double bn_ratio) {
             ParamSchedules s{omega, b, t, r, c1, k, a, c, bn_ratio};
             s.validate();
             return s;
           }),
           py::arg("omega") = 0.05, py::arg("b") = 0.2, py::arg("t") = 2.0, py::arg("r") = 3.0,
           py::arg("c1") = 0.1, py::arg("k") = 1.0, py::arg("a") = 1.0, py::arg("c") = 0.5,
           py::arg("bn_ratio") = 0.5)
      .def_readwrite("omega", &ParamSchedules::omega)
      .def_readwrite("b", &ParamSchedules::b)
      .def_readwrite("t", &ParamSchedules::t)
      .def_readwrite("r", &ParamSchedules::r);

  py::class_<RateTerms>(m, "RateTerms")
      .def_readonly("m_real", &RateTerms::m_real)
      .def_readonly("h0_log10", &RateTerms::h0_log10)
      .def_readonly("alpha_frac_sq", &RateTerms::alpha_frac_sq)
      .def_readonly("b_n", &RateTerms::b_n)
      .def_readonly("eps_star_n", &RateTerms::eps_star_n)
      .def_readonly("sigma_n_sq", &RateTerms::sigma_n_sq)
      .def_readonly("empty_term", &RateTerms::empty_term)
      .def_readonly("m_b_m", &RateTerms::m_b_m)
      .def_readonly("eps_star_m", &RateTerms::eps_star_m)
      .def_readonly("p_b_n", &RateTerms::p_b_n)
      .def_readonly("m_p_b_m", &RateTerms::m_p_b_m)
      .def_readonly("eps_l_n", &RateTerms::eps_l_n)
      .def_readonly("eps_l_m", &RateTerms::eps_l_m);

  py::enum_<Model>(m, "Model").value("EW", Model::kEw).value("SB", Model::kSb);

  py::enum_<WrongModelRegime>(m, "WrongModelRegime")
      .value("BOTH_CONSISTENT", WrongModelRegime::kBothConsistent)
      .value("EW_WRONG_SB_OK", WrongModelRegime::kEwWrongSbOk)
      .value("BOTH_CAN_BE_WRONG", WrongModelRegime::kBothCanBeWrong);

  m.def("f0_eval", &f0_eval, py::arg("td"), py::arg("y"));
  m.def("f0_sample",
        py::overload_cast<const TrueDensity&, std::size_t, std::uint64_t>(&f0_sample),
        py::arg("td"), py::arg("n"), py::arg("seed"));
  m.def("base_convolution", &base_convolution, py::arg("bp"), py::arg("scale"), py::arg("y"));
  m.def(
      "ew_density_eval",
      [](const std::vector<double>& theta, double sigma, double alpha, const BasePrior& bp,
         double k, double y) { return ew_density_eval(theta, sigma, alpha, bp, k, y); },
      py::arg("theta"), py::arg("sigma"), py::arg("alpha"), py::arg("bp"), py::arg("k"),
      py::arg("y"));
  m.def(
      "sb_density_eval",
      [](const std::vector<double>& theta, const std::vector<double>& weights, double sigma,
         double k, double y) { return sb_density_eval(theta, weights, sigma, k, y); },
      py::arg("theta"), py::arg("weights"), py::arg("sigma"), py::arg("k"), py::arg("y"));
  m.def("mv_product_density_eval",
        [](const std::vector<std::vector<double>>& theta, double sigma, double k,
           const std::vector<double>& y) { return mv_product_density_eval(theta, sigma, k, y); });
  m.def("polya_urn_sample",
        py::overload_cast<double, const BasePrior&, std::size_t, std::uint64_t>(&polya_urn_sample),
        py::arg("alpha"), py::arg("bp"), py::arg("m"), py::arg("seed"));

  m.def("h0_mass", &h0_mass);
  m.def("rate_terms", &py_rate_terms, py::arg("n"), py::arg("sched"), py::arg("bp"),
        py::arg("p") = std::nullopt);
  m.def("mise_order_ew", &mise_order_ew);
  m.def("mise_order_sb", &mise_order_sb);
  m.def("mise_order_largep", &mise_order_largep);
  m.def("comparison_ratios", [](double n, const ParamSchedules& s, const BasePrior& bp) {
    const ComparisonRatios cr = comparison_ratios(n, s, bp);
    return py::make_tuple(cr.ratio1, cr.cond2_holds, cr.ratio3);
  });
  m.def("ew_order_at_alpha", &ew_order_at_alpha, py::arg("n"), py::arg("t"), py::arg("r"),
        py::arg("c"), py::arg("alpha"));
  m.def("optimal_alpha_ew", [](double n, double t, double c) {
    const OptimalAlpha oa = optimal_alpha_ew(n, t, c);
    return py::make_tuple(oa.alpha_star, oa.mise_opt_log10);
  });
  m.def("rate_ordering", [](double n, const ParamSchedules& s, const BasePrior& bp) {
    const RateOrdering ro = rate_ordering(n, s, bp);
    return py::make_tuple(ro.sb, ro.ew, ro.fmise, ro.br_gvv, ro.ordering_holds);
  });
  m.def("prior_mise", &prior_mise);
  m.def("h_opt_prior", &h_opt_prior);
  m.def("wrong_model_check", &wrong_model_check, py::arg("omega"), py::arg("b"), py::arg("s"),
        py::arg("uses_cn_condition") = true);
  m.def("wrong_model_target", &wrong_model_target);

  m.def("pooled_within_variance",
        [](const std::vector<double>& data, const std::vector<std::size_t>& z) {
          const VarianceSplit vs = pooled_within_variance(data, z);
          return py::make_tuple(vs.within, vs.between);
        });

  m.def(
      "run_ew_mise",
      [](const TrueDensity& td, std::size_t n, const ParamSchedules& sched, const BasePrior& bp,
         std::size_t burn_in, std::size_t retained, std::uint64_t seed) {
        Rng rng(seed);
        const std::vector<double> data = f0_sample(td, n, rng);
        const double nd = static_cast<double>(n);
        const SigmaPrior sp = make_calibrated_sigma_prior(
            nd, sched.sigma_n(nd), sched.bn_ratio, sched.r, sched.alpha(nd),
            std::log(h0_mass(sched, bp)), sched.a, sched.c1, 200);
        const double half = td.a + td.c + 6.0 * td.k;
        std::vector<double> grid(401);
        for (std::size_t i = 0; i < grid.size(); ++i)
          grid[i] = -half + 2.0 * half * static_cast<double>(i) / 400.0;
        Rng chain_rng(derive_seed(seed, 1));
        const ChainResult cr = run_ew_chain(data, sched.alpha(static_cast<double>(n)), bp, sp,
                                            sched.k, {burn_in, retained, 1}, grid, chain_rng);
        return posterior_density_summary(cr.density_draws, grid, td).mise2;
      },
      py::arg("td"), py::arg("n"), py::arg("sched"), py::arg("bp"), py::arg("burn_in") = 200,
      py::arg("retained") = 400, py::arg("seed") = 1,
      "Draw data from f0, run one EW chain and return the empirical weighted MISE");

  m.def("parse_config", [](const std::string& text) {
    const ExperimentConfig cfg = parse_config(text);
    py::dict d;
    d["mode"] = mode_name(cfg.mode);
    d["omega"] = cfg.sched.omega;
    d["b"] = cfg.sched.b;
    d["t"] = cfg.sched.t;
    d["r"] = cfg.sched.r;
    d["seed"] = cfg.seed;
    d["reps"] = cfg.reps;
    d["out_prefix"] = cfg.out_prefix;
    d["n_list"] = cfg.n_list;
    return d;
  });

  m.attr("NEG_INF") = kNegInf;
}
