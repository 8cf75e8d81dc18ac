#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "torusfan/charfun.hpp"
#include "torusfan/cohomology.hpp"
#include "torusfan/error.hpp"
#include "torusfan/facering.hpp"
#include "torusfan/homology.hpp"
#include "torusfan/json_io.hpp"
#include "torusfan/realize.hpp"
#include "torusfan/transform.hpp"

namespace torusfan::cli {

namespace {

struct Common {
    std::string format = "json";
    std::string output;
    std::uint64_t seed = 1;
};

struct Outcome {
    Json report;
    int code = 0;
};

std::vector<std::int64_t> parseIntList(const std::string& text, const std::string& what) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(item, &used);
            if (used != item.size()) throw std::invalid_argument("trailing");
            out.push_back(v);
        } catch (const std::exception&) {
            throw InputError(what + ": '" + item + "' is not an integer");
        }
    }
    if (out.empty()) throw InputError(what + ": empty list");
    return out;
}

std::vector<CoefficientDomain> parseFields(const std::string& text) {
    std::vector<CoefficientDomain> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(CoefficientDomain::parse(item));
    if (out.empty()) throw InputError("--fields: empty list");
    return out;
}

Json intVector(const std::vector<std::int64_t>& v) { return Json(v); }

Json failuresToJson(const std::vector<FaceFailure>& failures) {
    Json arr = Json::array();
    for (const auto& f : failures) arr.push_back(Json{{"id", f.id}, {"reason", f.reason}});
    return arr;
}

std::string textLines(const Json& j) {
    std::string s;
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const auto& v = it.value();
            s += it.key() + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
        }
    } else {
        s = j.dump() + "\n";
    }
    return s;
}

void emit(const Json& report, const Common& common, std::ostream& out) {
    const std::string text = common.format == "text" ? textLines(report) : report.dump() + "\n";
    if (common.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(common.output, std::ios::binary);
    if (!file) throw InputError("cannot write " + common.output);
    file << text;
}

CharacteristicMap lambdaOrSearch(const SimplicialPoset& poset, const std::string& path, int bound) {
    if (!path.empty()) return loadLambda(path);
    auto found = findCharacteristicMap(poset, bound);
    if (!found) throw CheckFailure("no characteristic map with entries bounded by " + std::to_string(bound));
    return *found;
}

Json gkmReport(const SimplicialPoset& poset, const CharacteristicMap& lambda, int dmax, std::uint64_t seed,
               bool& allOk) {
    const GKMGraph g = buildGKMGraph(poset, lambda);
    allOk = g.ok();
    Json vertices = Json::array();
    for (Index p : g.vertices) vertices.push_back(poset.id(p));
    Json edges = Json::array();
    for (const auto& e : g.edges)
        edges.push_back(Json{{"id", e.id},
                             {"from", poset.id(g.vertices[e.from])},
                             {"to", poset.id(g.vertices[e.to])},
                             {"alpha_from", e.alphaFrom},
                             {"alpha_to", e.alphaTo},
                             {"sign", e.sign},
                             {"axiom1", e.axiom1},
                             {"axiom3", e.axiom3}});
    Json violations = Json::array();
    for (const auto& v : g.violations)
        violations.push_back(Json{{"id", v.edgeId}, {"axiom", v.axiom}, {"detail", v.detail}});

    const auto ring = makeFaceRing(poset);
    Json table = Json::array();
    for (int k = 0; k <= dmax; ++k) {
        const long long gkm = gkmSubalgebraDimension(g, k);
        const mpz_class face = gradedDimension(poset, k);
        const long long image = gkmImageRank(ring, g, k);
        table.push_back(Json{{"k", k}, {"gkm_dimension", gkm}, {"face_ring_dimension", face.get_si()},
                             {"image_rank", image}});
    }

    // Thom classes satisfy divisibility with integral quotients.
    bool thomOk = true;
    for (Index x = 0; x < poset.size(); ++x) {
        const auto d = divisibilityCheck(g, thomClassRestriction(poset, g, x));
        thomOk = thomOk && d.ok && d.integral;
    }
    allOk = allOk && thomOk;

    std::mt19937_64 rng(seed);
    bool hom = true;
    const auto q = CoefficientDomain::rationals();
    for (int t = 0; t < 10; ++t) {
        const RingElement a = randomElement(ring, q, rng, 2, 3);
        const RingElement b = randomElement(ring, q, rng, 2, 3);
        const auto pa = faceRingToGKM(g, a), pb = faceRingToGKM(g, b), pab = faceRingToGKM(g, a * b);
        for (std::size_t v = 0; v < pab.size(); ++v) hom = hom && pab[v] == pa[v] * pb[v];
    }
    allOk = allOk && hom;

    return Json{{"vertices", vertices},
                {"edges", edges},
                {"axioms_ok", g.ok()},
                {"violations", violations},
                {"thom_divisibility", thomOk},
                {"homomorphism_check", hom},
                {"dimensions", table}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Combinatorial invariants of torus manifolds from simplicial posets", "torusfan"};
    app.require_subcommand(1);
    Common common;
    auto addCommon = [&](CLI::App* sub) {
        sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--output,-o", common.output, "Write the report to a file");
        sub->add_option("--seed", common.seed, "Seed for randomized checks");
    };

    std::string posetPath, secondPath, lambdaPath, mode = "barycentric", kind, target, fieldsText = "Q,2,3,5";
    std::string coeffs = "Z", field = "Q", matchingText, expr;
    int at = 0, first = 0, second = 0, bound = 1, dmax = 6, n = 0, k = 0;
    bool force = false, viaSubdivision = false;
    bool haveAt = false;

    std::map<std::string, CLI::App*> subs;
    auto sub = [&](const std::string& name, const std::string& help) {
        CLI::App* s = app.add_subcommand(name, help);
        addCommon(s);
        subs[name] = s;
        return s;
    };

    sub("poset-validate", "Validate a poset file")->add_option("poset", posetPath)->required();
    sub("poset-hvector", "f- and h-vector")->add_option("poset", posetPath)->required();
    {
        auto* s = sub("poset-subdivide", "Barycentric or stellar subdivision");
        s->add_option("poset", posetPath)->required();
        s->add_option("--mode", mode)->check(CLI::IsMember({"barycentric", "stellar"}));
        s->add_option("--at", at, "Element id for stellar subdivision");
        s->add_flag("--force", force, "Allow barycentric subdivision above the rank bound");
    }
    {
        auto* s = sub("poset-join", "Simplicial join of two posets");
        s->add_option("first", posetPath)->required();
        s->add_option("second", secondPath)->required();
    }
    {
        auto* s = sub("poset-connectsum", "Connected sum at two top cells");
        s->add_option("first", posetPath)->required();
        s->add_option("second", secondPath)->required();
        s->add_option("--first-cell", first)->required();
        s->add_option("--second-cell", second)->required();
        s->add_option("--matching", matchingText, "Vertex pairs a:b separated by commas");
    }
    {
        auto* s = sub("poset-build", "Builder posets");
        s->add_option("--kind", kind)
            ->required()
            ->check(CLI::IsMember({"simplex-boundary", "sphere", "sphere-product", "simplex"}));
        s->add_option("--n", n)->required();
        s->add_option("--k", k);
    }
    {
        auto* s = sub("homology", "Reduced homology");
        s->add_option("poset", posetPath)->required();
        s->add_option("--coeffs", coeffs, "Z, Q or a prime");
        s->add_flag("--via-subdivision", viaSubdivision, "Compute on the barycentric subdivision");
    }
    {
        auto* s = sub("cm-check", "Cohen-Macaulay test");
        s->add_option("poset", posetPath)->required();
        s->add_option("--fields", fieldsText, "Comma-separated fields: Q or primes");
    }
    sub("gorenstein-check", "Gorenstein* test")->add_option("poset", posetPath)->required();
    {
        auto* s = sub("charfun-find", "Search for a characteristic map");
        s->add_option("poset", posetPath)->required();
        s->add_option("--bound", bound);
    }
    {
        auto* s = sub("charfun-check", "Unimodularity of a characteristic map");
        s->add_option("poset", posetPath)->required();
        s->add_option("lambda", lambdaPath)->required();
    }
    {
        auto* s = sub("gkm-report", "GKM graph, axioms and dimensions");
        s->add_option("poset", posetPath)->required();
        s->add_option("lambda", lambdaPath);
        s->add_option("--bound", bound);
        s->add_option("--dmax", dmax);
    }
    {
        auto* s = sub("betti", "Betti numbers of the quotient by the linear system");
        s->add_option("poset", posetPath)->required();
        s->add_option("lambda", lambdaPath);
        s->add_option("--field", field, "Q or a prime");
        s->add_option("--bound", bound);
    }
    {
        auto* s = sub("present-ring", "Cohomology ring presentation");
        s->add_option("poset", posetPath)->required();
        s->add_option("lambda", lambdaPath);
        s->add_option("--bound", bound);
    }
    {
        auto* s = sub("sw-parity", "Stiefel-Whitney parity check");
        s->add_option("poset", posetPath)->required();
        s->add_option("lambda", lambdaPath);
        s->add_option("--bound", bound);
    }
    {
        auto* s = sub("hilbert-check", "Chain-monomial counts against the h-vector series");
        s->add_option("poset", posetPath)->required();
        s->add_option("--dmax", dmax);
    }
    {
        auto* s = sub("ring-normalize", "Straighten a face-ring expression");
        s->add_option("poset", posetPath)->required();
        s->add_option("--expr", expr)->required();
        s->add_option("--coeffs", coeffs, "Z, Q or a prime");
    }
    {
        auto* s = sub("realize", "Realize an h-vector by connected sums");
        s->add_option("--target", target)->required();
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }
    haveAt = subs["poset-subdivide"]->count("--at") > 0;

    try {
        const PosetLimits limits = PosetLimits::fromEnvironment();
        auto parsed = [&](const char* name) { return subs.at(name)->parsed(); };
        Outcome result;

        if (parsed("poset-validate")) {
            const RawPoset raw = rawPosetFromJson(parseJson(readTextFile(posetPath), posetPath));
            const auto v = SimplicialPoset::validate(raw, limits);
            Json violations = Json::array();
            for (const auto& x : v.violations)
                violations.push_back(Json{{"id", x.id}, {"check", x.check}, {"detail", x.detail}});
            result.report = Json{{"valid", v.ok()}};
            if (v.ok()) {
                result.report["rank"] = v.poset->rank();
                result.report["elements"] = v.poset->size();
            }
            result.report["violations"] = violations;
            result.code = v.ok() ? 0 : 1;
        } else if (parsed("poset-hvector")) {
            const auto p = loadPoset(posetPath, limits);
            result.report = Json{{"f", intVector(fVector(p).entries)}, {"h", intVector(hVector(p).entries)}};
        } else if (parsed("poset-subdivide")) {
            const auto p = loadPoset(posetPath, limits);
            if (mode == "barycentric") {
                result.report = posetToJson(barycentricSubdivision(p, limits, force));
            } else {
                if (!haveAt) throw InputError("stellar subdivision needs --at");
                result.report = posetToJson(stellarSubdivision(p, p.at(at), limits));
            }
        } else if (parsed("poset-join")) {
            result.report = posetToJson(join(loadPoset(posetPath, limits), loadPoset(secondPath, limits), limits));
        } else if (parsed("poset-connectsum")) {
            const auto a = loadPoset(posetPath, limits);
            const auto b = loadPoset(secondPath, limits);
            if (matchingText.empty()) {
                result.report = posetToJson(connectedSum(a, a.at(first), b, b.at(second), limits));
            } else {
                VertexMatching matching;
                std::stringstream ss(matchingText);
                std::string pair;
                while (std::getline(ss, pair, ',')) {
                    const auto colon = pair.find(':');
                    if (colon == std::string::npos) throw InputError("--matching: expected a:b, got '" + pair + "'");
                    const auto l = parseIntList(pair.substr(0, colon), "--matching");
                    const auto r = parseIntList(pair.substr(colon + 1), "--matching");
                    matching.emplace_back(static_cast<int>(l[0]), static_cast<int>(r[0]));
                }
                result.report = posetToJson(connectedSum(a, a.at(first), b, b.at(second), matching, limits));
            }
        } else if (parsed("poset-build")) {
            if (n < 1 || n > limits.maxRank) throw InputError("--n must lie in [1, " + std::to_string(limits.maxRank) + "]");
            if (kind == "simplex-boundary")
                result.report = posetToJson(simplexBoundary(n));
            else if (kind == "sphere")
                result.report = posetToJson(spherePoset(n));
            else if (kind == "simplex")
                result.report = posetToJson(simplexPoset(n));
            else {
                if (k < 1 || k > n - 1) throw InputError("--k must lie in [1, n-1]");
                result.report = posetToJson(sphereProductPoset(k, n - k));
            }
        } else if (parsed("homology")) {
            const auto p = loadPoset(posetPath, limits);
            const auto domain = CoefficientDomain::parse(coeffs);
            const auto h = viaSubdivision ? reducedHomologyViaSubdivision(p, domain) : reducedHomology(p, domain);
            result.report = Json{{"coefficients", domain.name()}, {"homology", homologyToJson(h)}};
        } else if (parsed("cm-check")) {
            const auto p = loadPoset(posetPath, limits);
            const auto verdicts = cohenMacaulay(p, parseFields(fieldsText));
            Json arr = Json::array();
            bool all = true;
            for (const auto& v : verdicts) {
                all = all && v.cohenMacaulay;
                arr.push_back(Json{{"field", v.field}, {"cohen_macaulay", v.cohenMacaulay},
                                   {"failures", failuresToJson(v.failures)}});
            }
            bool torsionFree = true;
            for (Index x = 0; x < p.size(); ++x)
                for (const auto& d : reducedHomology(link(p, x)).dims) torsionFree = torsionFree && d.torsion.empty();
            result.report = Json{{"verdicts", arr}, {"link_torsion_free", torsionFree}};
            result.code = all ? 0 : 1;
        } else if (parsed("gorenstein-check")) {
            const auto p = loadPoset(posetPath, limits);
            const auto g = gorensteinStar(p, limits);
            result.report = Json{{"gorenstein", g.gorenstein},
                                 {"pseudomanifold", pseudomanifold(p)},
                                 {"euler_sphere", eulerSphereCheck(p)},
                                 {"dehn_sommerville", dehnSommervilleCheck(hVector(p))},
                                 {"failures", failuresToJson(g.failures)}};
            result.code = g.gorenstein ? 0 : 1;
        } else if (parsed("charfun-find")) {
            const auto p = loadPoset(posetPath, limits);
            if (bound < 1) throw InputError("--bound must be positive");
            const auto lambda = findCharacteristicMap(p, bound);
            result.report = lambda ? Json{{"found", true}, {"lambda", lambdaToJson(*lambda)}} : Json{{"found", false}};
            result.code = lambda ? 0 : 1;
        } else if (parsed("charfun-check")) {
            const auto p = loadPoset(posetPath, limits);
            const auto r = checkUnimodular(p, loadLambda(lambdaPath));
            Json violations = Json::array();
            for (const auto& [id, why] : r.violations) violations.push_back(Json{{"id", id}, {"reason", why}});
            result.report = Json{{"unimodular", r.ok}, {"violations", violations}};
            result.code = r.ok ? 0 : 1;
        } else if (parsed("gkm-report")) {
            const auto p = loadPoset(posetPath, limits);
            if (bound < 1 || dmax < 0) throw InputError("--bound must be positive and --dmax non-negative");
            const auto lambda = lambdaOrSearch(p, lambdaPath, bound);
            bool ok = true;
            result.report = gkmReport(p, lambda, dmax, common.seed, ok);
            result.report["lambda"] = lambdaToJson(lambda);
            result.code = ok ? 0 : 1;
        } else if (parsed("betti")) {
            const auto p = loadPoset(posetPath, limits);
            const auto domain = CoefficientDomain::parse(field);
            if (!domain.isField()) throw InputError("--field must be Q or a prime");
            const auto r = bettiNumbers(p, lambdaOrSearch(p, lambdaPath, bound), domain);
            result.report = Json{{"field", r.field}, {"betti", intVector(r.betti)}, {"matches_h", r.matchesH}};
        } else if (parsed("present-ring")) {
            const auto p = loadPoset(posetPath, limits);
            const auto pres = presentCohomologyRing(p, lambdaOrSearch(p, lambdaPath, bound));
            Json gens = Json::array();
            for (const auto& [id, deg] : pres.generators) gens.push_back(Json{{"id", id}, {"degree", deg}});
            Json rels = Json::array();
            for (const auto& r : pres.straightening) rels.push_back(r);
            for (const auto& r : pres.linear) rels.push_back(r);
            result.report = Json{{"generators", gens}, {"relations", rels}};
        } else if (parsed("sw-parity")) {
            const auto p = loadPoset(posetPath, limits);
            std::optional<CharacteristicMap> lambda;
            if (!lambdaPath.empty()) lambda = loadLambda(lambdaPath);
            const auto sw = swParity(p, lambda, std::max(bound, 2));
            if (!sw.applicable) {
                result.report = Json{{"applicable", false}, {"reason", sw.reason}};
            } else {
                result.report = Json{{"applicable", true}, {"pairing", sw.pairing}, {"euler_characteristic", sw.eulerCharacteristic},
                                     {"euler_parity", sw.euler},
                                     {"consistent", sw.consistent}};
                result.code = sw.consistent ? 0 : 1;
            }
        } else if (parsed("hilbert-check")) {
            const auto p = loadPoset(posetPath, limits);
            if (dmax < p.rank()) throw InputError("--dmax must be at least the rank");
            const auto r = hilbertCheck(p, dmax);
            Json rows = Json::array();
            for (const auto& row : r.rows)
                rows.push_back(Json{{"k", row.k}, {"count", row.count.get_str()}, {"expected", row.expected.get_str()}});
            result.report = Json{{"ok", r.ok}, {"rows", rows}};
            result.code = r.ok ? 0 : 1;
        } else if (parsed("ring-normalize")) {
            const auto ring = makeFaceRing(loadPoset(posetPath, limits));
            const auto domain = CoefficientDomain::parse(coeffs);
            const auto a = RingElement::parse(ring, domain, expr);
            Json restrictions = Json::array();
            if (ring->poset().isPure())
                for (const auto& poly : totalRestriction(a)) restrictions.push_back(poly.toString());
            result.report = Json{{"normal_form", a.toString()}, {"restrictions", restrictions}};
        } else if (parsed("realize")) {
            const auto h = parseIntList(target, "--target");
            const auto outcome = realizeWithLambda(h);
            if (const auto* refusal = std::get_if<Refusal>(&outcome)) {
                result.report = Json{{"verdict", refusal->stage}};
                if (refusal->stage == "malformed") {
                    result.report["reason"] = refusal->reason;
                    result.code = 2;
                } else {
                    result.code = 1;
                }
            } else {
                const auto& r = std::get<Realization>(outcome);
                const auto d = decompose(h);
                Json blocks = Json::array();
                for (const auto& [b, m] : d->blocks) blocks.push_back(Json{{"block", blockName(b)}, {"count", m}});
                result.report = Json{{"verdict", admissibilityName(admissible(h).verdict)},
                                     {"blocks", blocks},
                                     {"poset", posetToJson(r.poset)},
                                     {"lambda", lambdaToJson(r.lambda)},
                                     {"verification", Json{{"h", intVector(hVector(r.poset).entries)},
                                                           {"h_matches", hVector(r.poset).entries == h},
                                                           {"gorenstein", gorensteinStar(r.poset).gorenstein},
                                                           {"unimodular", checkUnimodular(r.poset, r.lambda).ok}}}};
            }
        }
        emit(result.report, common, out);
        return result.code;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const CheckFailure& e) {
        Json witnesses = Json::array();
        for (const auto& w : e.witnesses()) witnesses.push_back(w);
        emit(Json{{"check_failure", e.what()}, {"witnesses", witnesses}}, common, out);
        err << "check failed: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace torusfan::cli
