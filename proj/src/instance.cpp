#include "qfb/instance.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qfb {

using nlohmann::json;

namespace {

Word parse_word_names(const PresentedAlgebra& alg, const std::string& text) {
    std::istringstream is(text);
    std::vector<std::string> names;
    std::string tok;
    while (is >> tok) {
        size_t caret = tok.find('^');
        if (caret == std::string::npos) {
            names.push_back(tok);
        } else {
            std::string base = tok.substr(0, caret);
            long n = std::stol(tok.substr(caret + 1));
            for (long k = 0; k < n; ++k) names.push_back(base);
        }
    }
    return alg.parse_word(names);
}

struct Loader {
    json j;
    std::unique_ptr<Instance> inst = std::make_unique<Instance>();
    std::map<std::string, Rat> values;

    Scalar scalar(const std::string& text) const {
        return parse_scalar(inst->tab, text, &values);
    }

    NcPoly element(const PresentedAlgebra& alg, const json& v) const {
        if (!v.is_string()) throw LoadError("expected an expression string");
        return parse_element(alg, v.get<std::string>(), &values);
    }

    void build_algebra(PresentedAlgebra& alg, const json& spec) const {
        for (const auto& g : spec.at("generators")) {
            alg.add_generator(g.at("name").get<std::string>(),
                              g.value("degree", 0));
        }
        for (const auto& g : spec.at("generators")) {
            if (g.contains("star"))
                alg.set_star_pair(g.at("name").get<std::string>(),
                                  g.at("star").get<std::string>());
        }
        if (spec.contains("relations"))
            for (const auto& r : spec.at("relations")) {
                Word lhs = parse_word_names(alg, r.at(0).get<std::string>());
                NcPoly rhs = element(alg, r.at(1));
                alg.add_rule(std::move(lhs), std::move(rhs));
            }
    }

    std::unique_ptr<Hopf> build_hopf(const json& spec, const std::string& label) const {
        auto h = std::make_unique<Hopf>();
        h->alg = std::make_shared<PresentedAlgebra>(label, inst->tab);
        build_algebra(*h->alg, spec);
        auto& A = *h->alg;
        for (const auto& [name, img] : spec.at("coproduct").items()) {
            int id = A.gen_id(name);
            if (id < 0) throw LoadError(label + ": unknown generator " + name);
            Tensor t({h->alg.get(), h->alg.get()});
            for (const auto& pair : img) {
                NcPoly left = element(A, pair.at(0));
                NcPoly right = element(A, pair.at(1));
                t += Tensor::of(left).outer(Tensor::of(right));
            }
            h->cop_gen[id] = t.normalized();
        }
        for (const auto& [name, img] : spec.at("counit").items())
            h->eps_gen[A.gen_id(name)] = scalar(img.get<std::string>());
        for (const auto& [name, img] : spec.at("antipode").items())
            h->kappa_gen[A.gen_id(name)] = element(A, img);
        if (spec.contains("antipode_inverse")) {
            for (const auto& [name, img] : spec.at("antipode_inverse").items())
                h->kappa_inv_gen[A.gen_id(name)] = element(A, img);
        } else {
            h->kappa_inv_gen = h->kappa_gen;
        }
        if (spec.contains("haar")) {
            const auto& haar = spec.at("haar");
            if (haar.contains("default")) h->haar_default = scalar(haar.at("default"));
            if (haar.contains("values"))
                for (const auto& [word, val] : haar.at("values").items()) {
                    Word w = word == "1" ? Word() : parse_word_names(A, word);
                    h->haar_table[w] = scalar(val.get<std::string>());
                }
        }
        if (spec.contains("corepresentations"))
            for (const auto& c : spec.at("corepresentations")) {
                Corep u;
                u.name = c.at("name").get<std::string>();
                u.unitary = c.value("unitary", true);
                const auto& entries = c.at("entries");
                u.dim = entries.size();
                for (const auto& row : entries) {
                    std::vector<NcPoly> r;
                    for (const auto& e : row) r.push_back(element(A, e));
                    u.entries.push_back(std::move(r));
                }
                h->coreps.push_back(std::move(u));
            }
        for (size_t g = 0; g < A.size(); ++g) {
            int id = static_cast<int>(g);
            if (!h->cop_gen.count(id) || !h->eps_gen.count(id) || !h->kappa_gen.count(id))
                throw LoadError(label + ": structure maps missing on generator " + A.gen(id).name);
        }
        return h;
    }

    Mat matrix(const json& rows, size_t n) const {
        Mat m(n, n);
        if (rows.size() != n) throw LoadError("matrix has the wrong number of rows");
        for (size_t r = 0; r < n; ++r) {
            if (rows[r].size() != n) throw LoadError("matrix has the wrong number of columns");
            for (size_t c = 0; c < n; ++c) m.at(r, c) = scalar(rows[r][c].get<std::string>());
        }
        return m;
    }

    void build_bimodule(const json& spec) {
        auto& v = *(inst->V_own = std::make_unique<Bimodule>());
        v.G = inst->G.get();
        const auto& basis = spec.at("basis");
        v.n = basis.size();
        v.ext = std::make_shared<PresentedAlgebra>("exterior", inst->tab);
        for (const auto& b : basis) v.ext->add_generator(b.get<std::string>(), 1);
        if (spec.contains("star_pairs"))
            for (const auto& p : spec.at("star_pairs"))
                v.ext->set_star_pair(p.at(0).get<std::string>(), p.at(1).get<std::string>());
        const auto& coact = spec.at("coaction");
        v.coact.assign(v.n, std::vector<NcPoly>(v.n, NcPoly(inst->G->alg.get())));
        for (size_t r = 0; r < v.n; ++r)
            for (size_t c = 0; c < v.n; ++c)
                v.coact[r][c] = element(*inst->G->alg, coact[r][c]);
        for (const auto& [name, m] : spec.at("circ").items()) {
            int id = inst->G->alg->gen_id(name);
            if (id < 0) throw LoadError("circ: unknown group generator " + name);
            v.circ[id] = matrix(m, v.n);
        }
        v.star_mat = matrix(spec.at("star_matrix"), v.n);
        v.expect_trivial_kernel = spec.value("allow_trivial_kernel", false);
        v.compute_braiding();
        v.build_exterior_rules();
        if (spec.contains("reference_braiding"))
            inst->reference_tau = matrix(spec.at("reference_braiding"), v.n * v.n);
    }

    void build_bundle(const json& spec) {
        auto& P = *(inst->P_own = std::make_unique<Bundle>());
        P.G = inst->G.get();
        P.V = inst->V_own.get();
        P.B = std::make_shared<PresentedAlgebra>("bundle", inst->tab);
        build_algebra(*P.B, spec);
        for (const auto& [name, img] : spec.at("coaction").items()) {
            int id = P.B->gen_id(name);
            if (id < 0) throw LoadError("bundle coaction: unknown generator " + name);
            Tensor t({P.B.get(), inst->G->alg.get()});
            for (const auto& pair : img) {
                NcPoly left = element(*P.B, pair.at(0));
                NcPoly right = element(*inst->G->alg, pair.at(1));
                for (const auto& [bw, bc] : left.terms)
                    for (const auto& [aw, ac] : right.terms) t.insert({bw, aw}, bc * ac);
            }
            P.F_gen[id] = t;
        }
        if (spec.contains("base_generators"))
            for (const auto& b : spec.at("base_generators"))
                P.base_gens.push_back(b.get<std::string>());
        for (size_t g = 0; g < P.B->size(); ++g)
            if (!P.F_gen.count(static_cast<int>(g)))
                throw LoadError("bundle coaction missing on generator " +
                                P.B->gen(static_cast<int>(g)).name);
    }

    void build_frame(const json& spec, const Bundle& P) {
        if (spec.contains("fields")) {
            inst->fields = std::make_shared<CoordinateFields>();
            inst->fields->P = &P;
            inst->fields->images.resize(P.V->n);
            for (const auto& [basis_name, images] : spec.at("fields").items()) {
                int i = P.V->ext->gen_id(basis_name);
                if (i < 0) throw LoadError("frame fields: unknown basis class " + basis_name);
                for (const auto& [gen_name, img] : images.items()) {
                    int g = P.B->gen_id(gen_name);
                    if (g < 0) throw LoadError("frame fields: unknown generator " + gen_name);
                    inst->fields->images[static_cast<size_t>(i)][g] = element(*P.B, img);
                }
            }
            inst->nabla = frame_map(&P, inst->fields);
        }
        if (spec.contains("reduction")) {
            inst->red = std::make_shared<ReductionData>();
            inst->red->P = &P;
            for (const auto& [name, fam] : spec.at("reduction").items()) {
                int id = inst->G->alg->gen_id(name);
                if (id < 0) throw LoadError("reduction: unknown group generator " + name);
                for (const auto& pair : fam)
                    inst->red->pairs[id].emplace_back(element(*P.B, pair.at(0)),
                                                      element(*P.B, pair.at(1)));
            }
        }
        if (spec.contains("dual_pairs")) {
            for (const auto& fam : spec.at("dual_pairs")) {
                std::vector<NcPoly> q, p;
                for (const auto& e : fam.at("q")) q.push_back(element(*P.B, e));
                for (const auto& e : fam.at("p")) p.push_back(element(*P.B, e));
                if (q.size() != P.V->n || p.size() != P.V->n)
                    throw LoadError("dual pair rows must match the basis size");
                inst->dual_pairs.emplace_back(std::move(q), std::move(p));
            }
        }
        if (spec.contains("coordinate")) {
            CoordinateSpan span;
            for (const auto& f : spec.at("coordinate").at("f"))
                span.f.push_back(element(*P.B, f));
            for (const auto& row : spec.at("coordinate").at("b")) {
                std::vector<NcPoly> r;
                for (const auto& e : row) r.push_back(element(*P.B, e));
                if (r.size() != P.V->n)
                    throw LoadError("coordinate rows must match the basis size");
                span.b.push_back(std::move(r));
            }
            if (span.b.size() != span.f.size())
                throw LoadError("coordinate family sizes disagree");
            inst->coord = std::move(span);
        }
    }

    void build_fodc(const json& spec, const Bundle& P) {
        inst->fodc = std::make_shared<Fodc>();
        auto& f = *inst->fodc;
        f.P = &P;
        for (const auto& g : spec.at("ideal")) f.ideal.push_back(element(*inst->G->alg, g));
        f.slice_len = spec.value("slice_length", 6);
        f.gext = std::make_shared<PresentedAlgebra>("gamma", inst->tab);
        for (const auto& b : spec.at("invariant_basis")) {
            f.basis_names.push_back(b.at("name").get<std::string>());
            f.basis_reps.push_back(element(*inst->G->alg, b.at("representative")));
            f.gext->add_generator(f.basis_names.back(), 1);
        }
        if (spec.contains("relations"))
            for (const auto& r : spec.at("relations")) {
                Word lhs = parse_word_names(*f.gext, r.at(0).get<std::string>());
                NcPoly rhs = element(*f.gext, r.at(1));
                f.gext->add_rule(std::move(lhs), std::move(rhs));
            }
        for (const auto& [name, img] : spec.at("d").items()) {
            int id = f.gext->gen_id(name);
            if (id < 0) throw LoadError("calculus d: unknown class " + name);
            f.d_wedge[id] = element(*f.gext, img);
        }
        if (spec.contains("delta")) {
            for (const auto& b : f.basis_names) {
                f.delta.push_back(matrix(spec.at("delta").at(b), f.dim()));
            }
        } else {
            Mat z(f.dim(), f.dim());
            for (size_t r = 0; r < f.dim(); ++r)
                for (size_t c = 0; c < f.dim(); ++c) z.at(r, c) = Scalar::zero(inst->tab);
            f.delta.assign(f.dim(), z);
        }
        f.build();
    }

    void build_line_bundle(const json& spec, const Bundle& P) {
        LineBundleData lb;
        lb.P = &P;
        if (!inst->fields) throw LoadError("line_bundle requires frame fields");
        lb.X = inst->fields.get();
        lb.lambda = scalar(spec.at("lambda"));
        lb.coefficient = scalar(spec.at("coefficient"));
        for (const auto& [name, img] : spec.at("gamma").items())
            lb.gamma[P.B->gen_id(name)] = element(*P.B, img);
        for (const auto& [name, img] : spec.at("gamma_inverse").items())
            lb.gamma_inv[P.B->gen_id(name)] = element(*P.B, img);
        inst->lb = std::move(lb);
    }

    void build_homogeneous(const json& spec) {
        inst->Hbig = build_hopf(spec.at("H"), "big-group");
        inst->homog = std::make_unique<Homogeneous>();
        auto& h = *inst->homog;
        h.H = inst->Hbig.get();
        h.G = inst->G.get();
        const auto& Ap = *inst->Hbig->alg;
        const auto& A = *inst->G->alg;
        for (const auto& [name, img] : spec.at("sigma").items())
            h.sigma[Ap.gen_id(name)] = element(A, img);
        for (const auto& [name, img] : spec.at("sigma_section").items())
            h.sigma_section[A.gen_id(name)] = element(Ap, img);
        h.phi_bicovariant = spec.value("bicovariant", false);
        h.phi_ext = std::make_shared<PresentedAlgebra>("phi", inst->tab);
        for (const auto& b : spec.at("invariant_basis"))
            h.phi_ext->add_generator(b.get<std::string>(), 1);
        for (const auto& [name, img] : spec.at("pi").items())
            h.pi_prime_gen[Ap.gen_id(name)] = element(*h.phi_ext, img);
        for (const auto& [name, m] : spec.at("circ").items())
            h.phi_circ[Ap.gen_id(name)] = matrix(m, h.phi_ext->size());
        h.phi_star = matrix(spec.at("star_matrix"), h.phi_ext->size());
        auto idx_list = [&](const json& arr) {
            std::vector<size_t> out;
            for (const auto& e : arr) {
                int id = h.phi_ext->gen_id(e.get<std::string>());
                if (id < 0) throw LoadError("homogeneous: unknown class " + e.get<std::string>());
                out.push_back(static_cast<size_t>(id));
            }
            return out;
        };
        h.L_idx = idx_list(spec.at("vertical_basis"));
        h.Lperp_idx = idx_list(spec.at("complement_basis"));
        for (const auto& l : spec.at("lifts")) h.K_lifts.push_back(element(Ap, l));
        for (const auto& b : spec.at("base_generators"))
            h.base_gens.push_back(b.get<std::string>());
        h.build_derived();

        if (spec.contains("ideal_lifts"))
            for (const auto& pair : spec.at("ideal_lifts"))
                inst->ideal_lifts.emplace_back(element(A, pair.at("r")),
                                               element(Ap, pair.at("q")));
    }

    void run() {
        inst->name = j.value("name", "instance");
        auto tab = std::make_shared<ParamTable>();
        if (j.contains("parameters")) {
            const auto& p = j.at("parameters");
            if (p.contains("names"))
                for (const auto& n : p.at("names")) tab->names.push_back(n.get<std::string>());
            inst->tab = tab;
            if (p.contains("values"))
                for (const auto& [name, v] : p.at("values").items()) {
                    Scalar s = parse_scalar(inst->tab, v.get<std::string>());
                    GaussRat g = s.constant_value();
                    if (g.im != 0) throw LoadError("parameter values must be real rationals");
                    values[name] = g.re;
                }
            if (p.contains("exclusions"))
                for (const auto& [name, list] : p.at("exclusions").items()) {
                    if (!values.count(name)) continue;
                    for (const auto& e : list) {
                        Scalar s = parse_scalar(inst->tab, e.get<std::string>());
                        if (GaussRat(values.at(name)) == s.constant_value())
                            throw LoadError("excluded parameter value: " + name + " = " +
                                            e.get<std::string>());
                    }
                }
        } else {
            inst->tab = tab;
        }
        inst->values = values;

        inst->G = build_hopf(j.at("group"), "group");

        if (j.contains("homogeneous")) {
            build_homogeneous(j.at("homogeneous"));
            // frame and bundle come from the construction
            inst->fields = inst->homog->fields;
            inst->nabla = inst->homog->nabla;
        } else {
            build_bimodule(j.at("bimodule"));
            build_bundle(j.at("bundle"));
        }
        const Bundle& P = inst->bundle();

        if (j.contains("frame")) build_frame(j.at("frame"), P);

        if (j.contains("connections"))
            for (const auto& [name, table] : j.at("connections").items()) {
                if (!inst->red) throw LoadError("connections require reduction data");
                auto chi = std::make_shared<KerEpsMap>();
                chi->P = &P;
                chi->red = inst->red;
                for (const auto& [gen, img] : table.items()) {
                    int id = inst->G->alg->gen_id(gen);
                    if (id < 0) throw LoadError("connection " + name + ": unknown entry " + gen);
                    chi->seeds[id] = parse_hor(P, img.get<std::string>(), &values);
                }
                inst->connections[name] = std::move(chi);
            }

        if (j.contains("calculus")) build_fodc(j.at("calculus"), P);

        if (j.contains("line_bundle")) build_line_bundle(j.at("line_bundle"), P);

        if (j.contains("checks")) {
            const auto& c = j.at("checks");
            inst->checks.seed = c.value("seed", 1);
            inst->checks.samples = c.value("samples", 100);
            inst->checks.word_length = c.value("word_length", 3);
            inst->checks.maximality_bound = c.value("maximality_bound", 0);
            inst->checks.regularity_bound = c.value("regularity_bound", 3);
            inst->checks.regularity_expected_dim = c.value("regularity_expected_dim", 0);
            inst->checks.confluence_length = c.value("confluence_length", 6);
            inst->checks.series_bound = c.value("series_bound", 4);
            inst->checks.coordinate_slice = c.value("coordinate_slice", 3);
        }

        if (inst->fodc && inst->has_frame() && inst->red) {
            inst->calc = std::make_unique<Calculus>();
            inst->calc->P = &P;
            inst->calc->fodc = inst->fodc;
            inst->calc->frame = inst->nabla;
            inst->calc->rho =
                std::make_shared<KerEpsMap>(curvature_extract(P, inst->nabla, inst->red));
        }
    }
};

}  // namespace

std::unique_ptr<Instance> load_instance_text(const std::string& json_text,
                                             const std::string& name_hint) {
    Loader loader;
    try {
        loader.j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw LoadError(name_hint + ": " + e.what());
    }
    try {
        loader.run();
    } catch (const LoadError&) {
        throw;
    } catch (const std::exception& e) {
        throw LoadError(name_hint + ": " + e.what());
    }
    return std::move(loader.inst);
}

std::unique_ptr<Instance> load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open definition file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_instance_text(ss.str(), path);
}

std::string instance_dir() { return QFB_INSTANCE_DIR; }

}  // namespace qfb
