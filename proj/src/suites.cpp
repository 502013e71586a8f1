#include "qfb/suites.hpp"

#include <sstream>

namespace qfb {

namespace {

CheckConfig check_cfg(const Instance& inst) {
    CheckConfig cfg;
    cfg.seed = inst.checks.seed;
    cfg.samples = inst.checks.samples;
    cfg.blen = inst.checks.word_length;
    return cfg;
}

void confluence_checks(Report& rep, const Instance& inst) {
    std::vector<const PresentedAlgebra*> algs{inst.G->alg.get(), inst.bim().ext.get(),
                                              inst.bundle().B.get()};
    if (inst.Hbig) algs.push_back(inst.Hbig->alg.get());
    if (inst.fodc) algs.push_back(inst.fodc->gext.get());
    for (const auto* alg : algs) {
        run_check(rep, "rewrite." + alg->label + ".confluence",
                  "overlaps join up to length " + std::to_string(inst.checks.confluence_length),
                  [&] {
                      auto crep = alg->check_confluence(inst.checks.confluence_length,
                                                        /*check_star=*/true);
                      if (!crep.pass) {
                          for (const auto& o : crep.overlaps)
                              if (!o.joins)
                                  return std::make_pair(false, "overlap " + alg->word_str(o.word));
                          if (!crep.star_failures.empty())
                              return std::make_pair(false,
                                                    "star closure: " + crep.star_failures.front());
                      }
                      return std::make_pair(true,
                                            std::to_string(crep.overlaps.size()) + " overlaps");
                  });
    }
}

void dual_pair_checks(Report& rep, const Instance& inst) {
    if (inst.dual_pairs.empty()) return;
    const Bundle& P = inst.bundle();
    const auto& B = *P.B;
    size_t n = P.V->n;
    run_check(rep, "frame.dual-pairs", "sum_a q_ai p_aj = delta_ij 1, F(p_ai) covariant", [&] {
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                NcPoly s(P.B.get());
                for (const auto& [q, p] : inst.dual_pairs) s += q[i] * p[j];
                NcPoly expect = i == j ? B.unit() : B.zero();
                if (B.normal_form(s) != expect)
                    return std::make_pair(false,
                                          "pair (" + std::to_string(i) + "," + std::to_string(j) +
                                              ")");
            }
        for (const auto& [q, p] : inst.dual_pairs)
            for (size_t i = 0; i < n; ++i) {
                Tensor lhs = P.F_poly(p[i]);
                Tensor rhs({P.B.get(), P.G->alg.get()});
                for (size_t j = 0; j < n; ++j)
                    for (const auto& [bw, bc] : p[j].terms)
                        for (const auto& [aw, ac] : P.V->coact[j][i].terms)
                            rhs.insert({bw, aw}, bc * ac);
                if (lhs != rhs.normalized())
                    return std::make_pair(false, "p column " + std::to_string(i));
            }
        return std::make_pair(true, std::string());
    });
}

Report suite_validate(const Instance& inst) {
    Report rep;
    rep.seed = inst.checks.seed;
    confluence_checks(rep, inst);

    VerifyOptions vo;
    vo.seed = inst.checks.seed;
    vo.samples = inst.checks.samples;
    vo.max_word_len = static_cast<int>(inst.checks.word_length);
    rep.merge(verify_group_data(*inst.G, vo));
    if (inst.Hbig) {
        Report hr = verify_group_data(*inst.Hbig, vo);
        for (auto& c : hr.checks) c.name = "big-" + c.name;
        rep.merge(hr);
    }

    BimoduleVerifyOptions bo;
    bo.seed = inst.checks.seed;
    if (inst.reference_tau) bo.reference_tau = &*inst.reference_tau;
    rep.merge(verify_bimodule(inst.bim(), bo));

    rep.merge(verify_bundle(inst.bundle(), inst.checks.seed, inst.checks.samples,
                            inst.checks.word_length));

    if (inst.fields) rep.merge(verify_coordinate_fields(*inst.fields));
    if (inst.red) rep.merge(verify_reduction(*inst.red));
    dual_pair_checks(rep, inst);

    rep.sort_by_name();
    return rep;
}

Report suite_frame(const Instance& inst) {
    Report rep;
    rep.seed = inst.checks.seed;
    if (!inst.has_frame()) {
        rep.skip("frame", "frame structure checks", "no frame declared");
        return rep;
    }
    CheckConfig cfg = check_cfg(inst);
    rep.merge(verify_frame(inst.bundle(), inst.nabla, inst.coord ? &*inst.coord : nullptr,
                           inst.red.get(), cfg));
    rep.merge(leibniz_criterion(inst.bundle(), inst.nabla, inst.nabla, cfg));
    if (inst.lb) rep.merge(verify_line_bundle(*inst.lb, cfg));
    rep.sort_by_name();
    return rep;
}

Report suite_curvature(const Instance& inst) {
    Report rep;
    rep.seed = inst.checks.seed;
    if (!inst.has_frame() || !inst.red) {
        rep.skip("curvature", "curvature checks", "frame or reduction data missing");
        return rep;
    }
    CheckConfig cfg = check_cfg(inst);
    const Bundle& P = inst.bundle();
    KerEpsMap rho = curvature_extract(P, inst.nabla, inst.red);
    rep.merge(curvature_resubstitution(P, inst.nabla, rho, cfg));
    rep.merge(curvature_identities(P, inst.nabla, rho, cfg));

    if (inst.lb) {
        rep.merge(curvature_series_check(*inst.lb, inst.nabla, inst.red,
                                         inst.checks.series_bound));
        // tabulate the curvature values for the report
        run_check(rep, "lb.curvature-table", "rho(u^n) for |n| <= bound", [&] {
            std::ostringstream os;
            const auto& A = P.A();
            for (long n = 1; n <= static_cast<long>(inst.checks.series_bound); ++n) {
                NcPoly un = A.unit(), uin = A.unit();
                for (long k = 0; k < n; ++k) {
                    un = un * A.generator("u");
                    uin = uin * A.generator("u*");
                }
                os << "rho(u^" << n << ") = " << rho.apply(un).str() << "; ";
                os << "rho(u^-" << n << ") = " << rho.apply(uin).str() << "; ";
            }
            return std::make_pair(true, os.str());
        });
    }

    for (const auto& [name, chi] : inst.connections) {
        Report cr = verify_chi_props(P, *chi, cfg);
        Report cc = connecting_identity_check(P, inst.nabla, *chi, inst.red, cfg);
        for (auto& c : cr.checks) c.name = "conn." + name + "." + c.name;
        for (auto& c : cc.checks) c.name = "conn." + name + "." + c.name;
        rep.merge(cr);
        rep.merge(cc);
    }
    rep.sort_by_name();
    return rep;
}

Report suite_torsion(const Instance& inst) {
    Report rep;
    rep.seed = inst.checks.seed;
    if (!inst.calc) {
        rep.skip("torsion", "torsion checks", "total calculus not assembled");
        return rep;
    }
    CheckConfig cfg = check_cfg(inst);
    const Calculus& C = *inst.calc;

    ConnectionForm frame_form;
    frame_form.C = &C;
    {
        Report t = verify_torsion(frame_form, cfg);
        Report s = second_structure_check(frame_form, cfg);
        Report f = verify_connection_form(frame_form, cfg);
        for (auto& c : t.checks) c.name = "frame-omega." + c.name;
        for (auto& c : s.checks) c.name = "frame-omega." + c.name;
        for (auto& c : f.checks) c.name = "frame-omega." + c.name;
        rep.merge(t);
        rep.merge(s);
        rep.merge(f);
        run_check(rep, "frame-omega.torsion-vanishes", "the frame torsion is zero", [&] {
            for (const auto& t2 : torsion_form(frame_form))
                if (!t2.is_zero()) return std::make_pair(false, std::string("nonzero component"));
            return std::make_pair(true, std::string());
        });
        run_check(rep, "frame-omega.first-structure", "R omega = the extracted curvature", [&] {
            for (size_t i = 0; i < C.fodc->dim(); ++i)
                if (curvature_form(frame_form, i) != Omega::of_hor(&C, C.rho_gamma(i)))
                    return std::make_pair(false, "class " + C.fodc->basis_names[i]);
            return std::make_pair(true, std::string());
        });
    }

    for (const auto& [name, chi] : inst.connections) {
        ConnectionForm w;
        Report built = connection_from_chi(C, chi, &w, cfg);
        bool ok = built.all_pass();
        Report t = ok ? verify_torsion(w, cfg) : Report{};
        Report s = ok ? second_structure_check(w, cfg) : Report{};
        Report f = ok ? verify_connection_form(w, cfg) : Report{};
        for (auto& c : built.checks) c.name = "conn." + name + "." + c.name;
        for (auto& c : t.checks) c.name = "conn." + name + "." + c.name;
        for (auto& c : s.checks) c.name = "conn." + name + "." + c.name;
        for (auto& c : f.checks) c.name = "conn." + name + "." + c.name;
        rep.merge(built);
        rep.merge(t);
        rep.merge(s);
        rep.merge(f);
    }
    rep.sort_by_name();
    return rep;
}

Report suite_calculus(const Instance& inst) {
    Report rep;
    rep.seed = inst.checks.seed;
    if (!inst.fodc || !inst.calc) {
        rep.skip("calculus", "calculus checks", "no calculus declared");
        return rep;
    }
    const Calculus& C = *inst.calc;
    KerEpsMap rho = *C.rho;

    if (inst.lb) {
        rep.merge(minimal_calculus_so2(*inst.lb, inst.nabla, inst.red, *inst.fodc,
                                       inst.checks.maximality_bound));
    } else {
        IdealVerifyOptions io;
        io.seed = inst.checks.seed;
        io.maximality_bound = inst.checks.maximality_bound;
        io.annihilating_maps = {&rho};
        rep.merge(verify_ideal(*inst.fodc, io));
    }

    OmegaVerifyOptions oo;
    oo.seed = inst.checks.seed;
    oo.samples = std::max(10, inst.checks.samples / 2);
    oo.blen = inst.checks.word_length;
    rep.merge(verify_omega(C, oo));

    for (const auto& [name, chi] : inst.connections) {
        ConnectionForm w;
        Report built = connection_from_chi(C, chi, &w, check_cfg(inst));
        for (auto& c : built.checks) c.name = "conn." + name + "." + c.name;
        rep.merge(built);
    }
    rep.sort_by_name();
    return rep;
}

Report suite_regularity(const Instance& inst) {
    Report rep;
    rep.seed = inst.checks.seed;
    if (!inst.red) {
        rep.skip("regularity", "regularity space", "no reduction data");
        return rep;
    }
    size_t L = inst.checks.regularity_bound;
    RegularitySpace sp = regularity_space(inst.bundle(), *inst.red, L, true);
    run_check(rep, "regularity.space",
              "solutions of {sym-12, antisym, hermiticity} at word length " + std::to_string(L),
              [&] {
                  bool ok = sp.dim == inst.checks.regularity_expected_dim;
                  std::string note = "dim = " + std::to_string(sp.dim) + " (candidates " +
                                     std::to_string(sp.candidate_dim) + "); regular up to length " +
                                     std::to_string(L) + ": " + (sp.dim == 0 ? "yes" : "no");
                  return std::make_pair(ok, note);
              });
    RegularitySpace nosym = regularity_space(inst.bundle(), *inst.red,
                                             std::min<size_t>(L, 2), false);
    run_check(rep, "regularity.negative-control",
              "dropping sym-12 admits vertical displacements", [&] {
                  bool ok = nosym.dim > 0;
                  return std::make_pair(ok, "dim = " + std::to_string(nosym.dim));
              });
    rep.sort_by_name();
    return rep;
}

Report suite_homogeneous(const Instance& inst) {
    Report rep;
    rep.seed = inst.checks.seed;
    if (!inst.homog) {
        rep.skip("homogeneous", "inclusion construction checks", "not a homogeneous instance");
        return rep;
    }
    HomogeneousVerifyOptions ho;
    ho.seed = inst.checks.seed;
    ho.word_len = inst.checks.word_length;
    ho.ideal_lifts = inst.ideal_lifts;
    rep.merge(verify_homogeneous(*inst.homog, ho));

    run_check(rep, "hom.coordinate-elements",
              "coordinate elements solved in the fixed-point slice", [&] {
                  std::string diag;
                  std::vector<NcPoly> cands;
                  for (const auto& name : inst.homog->base_gens)
                      cands.push_back(inst.homog->bundle.B->generator(name));
                  cands.push_back(inst.homog->bundle.B->unit());
                  auto coord = coordinate_elements(*inst.homog, inst.checks.coordinate_slice,
                                                   inst.checks.word_length, cands, &diag);
                  if (!coord) return std::make_pair(false, diag);
                  // the produced family satisfies the spanning identity
                  Report fr = verify_frame(inst.homog->bundle, inst.homog->nabla, &coord->span,
                                           nullptr, check_cfg(inst));
                  for (const auto& c : fr.checks)
                      if (c.status == Status::fail)
                          return std::make_pair(false, "induced family fails " + c.name);
                  return std::make_pair(true, std::string());
              });
    rep.sort_by_name();
    return rep;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"validate", "frame", "curvature", "torsion", "calculus",
            "regularity", "homogeneous", "all"};
}

Report run_suite(const Instance& inst, const std::string& suite) {
    if (suite == "validate") return suite_validate(inst);
    if (suite == "frame") return suite_frame(inst);
    if (suite == "curvature") return suite_curvature(inst);
    if (suite == "torsion") return suite_torsion(inst);
    if (suite == "calculus") return suite_calculus(inst);
    if (suite == "regularity") return suite_regularity(inst);
    if (suite == "homogeneous") return suite_homogeneous(inst);
    if (suite == "all") {
        Report rep;
        rep.seed = inst.checks.seed;
        rep.merge(suite_validate(inst));
        rep.merge(suite_frame(inst));
        rep.merge(suite_curvature(inst));
        rep.merge(suite_torsion(inst));
        rep.merge(suite_calculus(inst));
        rep.merge(suite_regularity(inst));
        if (inst.homog) rep.merge(suite_homogeneous(inst));
        rep.sort_by_name();
        return rep;
    }
    throw std::invalid_argument("unknown suite: " + suite);
}

}  // namespace qfb
