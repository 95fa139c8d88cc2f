// Batch front end: build gallery systems, run checks, compute spectra and
// homology, emit JSON reports on stdout. Commands compose through pipes:
//
//   ncpt gallery heisenberg | ncpt check-ncp -
//
// Exit codes: 0 definite results, 1 input errors, 2 honest Unknown verdicts.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "ncpt/io.hpp"

using namespace ncpt;

namespace {

json read_input(const std::string& path) {
    try {
        if (path == "-") return json::parse(std::cin);
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error("malformed JSON in " + path + " at byte " +
                                 std::to_string(e.byte) + ": " + e.what());
    }
}

unsigned long long fnv1a(const std::string& s) {
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string digest(std::initializer_list<const json*> inputs) {
    std::string all;
    for (auto* j : inputs) all += j->dump();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", fnv1a(all));
    return buf;
}

struct Clock {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

int exit_code_for(const json& report) {
    // any honest Unknown surfaces as exit 2
    if (report.contains("verdict") && report["verdict"] == "unknown") return 2;
    if (report.contains("trivial") && report["trivial"] == "unknown") return 2;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"noncommutative principal torus bundle toolkit"};
    app.require_subcommand(1);

    unsigned long long seed = 1;
    if (const char* env = std::getenv("NCPB_SEED")) seed = std::strtoull(env, nullptr, 10);
    double tol = 1e-9;
    std::string format = "json";
    app.add_option("--seed", seed, "random seed (falls back to NCPB_SEED)");
    app.add_option("--tol", tol, "global comparison tolerance");
    app.add_option("--format", format, "output format (json)");

    std::string in1 = "-", in2, t_json, f_path, dot_path, gallery_name, theta_str = "1/3";
    int degree = 1;
    long long chern = 1;

    auto* c_mul = app.add_subcommand("mul", "product of two torus elements");
    c_mul->add_option("a", in1)->required();
    c_mul->add_option("b", in2)->required();
    auto* c_star = app.add_subcommand("star", "involution of a torus element");
    c_star->add_option("a", in1);
    auto* c_act = app.add_subcommand("act", "torus action on an element");
    c_act->add_option("--t", t_json, "torus point as a JSON array of rationals")->required();
    c_act->add_option("a", in1);
    auto* c_inv = app.add_subcommand("invert", "certified invertibility check");
    c_inv->add_option("a", in1);
    auto* c_rad = app.add_subcommand("radical", "Jacobson radical of a structure algebra");
    c_rad->add_option("algebra", in1);
    auto* c_chi = app.add_subcommand("characters", "characters of a commutative algebra");
    c_chi->add_option("algebra", in1);
    auto* c_cov = app.add_subcommand("cover", "spectrum covering of a findim bundle");
    c_cov->add_option("bundle", in1);
    c_cov->add_option("--dot", dot_path, "also write the total space as DOT");
    auto* c_h = app.add_subcommand("h", "simplicial homology over Z");
    c_h->add_option("complex", in1);
    c_h->add_option("--degree", degree, "homology degree")->required();
    auto* c_ab = app.add_subcommand("abelianize", "abelianization of a presentation");
    c_ab->add_option("presentation", in1);
    std::string candidates_path;
    auto* c_ct = app.add_subcommand("check-trivial", "trivial-NCP verdict with certificates");
    c_ct->add_option("system", in1);
    c_ct->add_option("--candidates", candidates_path,
                     "JSON array of section families to try as Neumann witnesses");
    auto* c_cn = app.add_subcommand("check-ncp", "NCP verdict via star localization");
    c_cn->add_option("system", in1);
    auto* c_rec = app.add_subcommand("reconstruct", "principal data from an Ncp verdict");
    c_rec->add_option("system", in1);
    auto* c_gal = app.add_subcommand("gallery", "emit a prebuilt example system");
    c_gal->add_option("name", gallery_name,
                      "nctorus | qt-bundle | qt-chern | equivariant | pullback | heisenberg")
        ->required();
    c_gal->add_option("--theta", theta_str, "theta_12 as p/q");
    c_gal->add_option("--chern", chern, "Chern class for qt-chern");
    auto* c_loc = app.add_subcommand("localize", "restrict a system to a weight support");
    c_loc->add_option("--f", f_path, "weight function JSON")->required();
    c_loc->add_option("system", in1);

    CLI11_PARSE(app, argc, argv);
    set_tolerance(tol);

    Clock clock;
    json report;
    report["schema"] = "ncpt-report/1";
    report["seed"] = seed;
    report["tolerance"] = tol;

    try {
        if (c_gal->parsed()) {
            // gallery emits the bare system JSON so checks can pipe from it
            long long num = 0, den = 1;
            if (std::sscanf(theta_str.c_str(), "%lld/%lld", &num, &den) < 1)
                throw std::runtime_error("cannot parse --theta " + theta_str);
            NcpSystem sys = example_gallery(gallery_name, Rat(num, den), chern);
            json out = to_json(sys);
            out["gallery"] = gallery_name;
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (c_mul->parsed()) {
            json ja = read_input(in1), jb = read_input(in2);
            NcTorusElement r = multiply(nct_from_json(ja), nct_from_json(jb));
            report["command"] = "mul";
            report["input_digest"] = digest({&ja, &jb});
            report["result"] = to_json(r);
            report["provenance"] = "float:" + std::to_string(tol);
        } else if (c_star->parsed()) {
            json ja = read_input(in1);
            report["command"] = "star";
            report["input_digest"] = digest({&ja});
            report["result"] = to_json(star(nct_from_json(ja)));
            report["provenance"] = "float:" + std::to_string(tol);
        } else if (c_act->parsed()) {
            json ja = read_input(in1);
            TorusPoint t = torus_point_from_json(json::parse(t_json));
            report["command"] = "act";
            report["input_digest"] = digest({&ja});
            report["result"] = to_json(act(t, nct_from_json(ja)));
            report["provenance"] = "exact phases on float coefficients";
        } else if (c_inv->parsed()) {
            json ja = read_input(in1);
            InvertibilityVerdict v = certify_invertible(nct_from_json(ja));
            report["command"] = "invert";
            report["input_digest"] = digest({&ja});
            report["verdict"] = v.tag == InvertTag::Invertible ? "invertible"
                                : v.tag == InvertTag::Zero     ? "zero"
                                                               : "unknown";
            if (v.tag == InvertTag::Invertible) {
                report["certificate"] =
                    v.certificate == InvertCertificate::Monomial ? "monomial" : "neumann";
                report["residual"] = v.residual;
                report["inverse"] = to_json(v.inverse);
            }
        } else if (c_rad->parsed()) {
            json ja = read_input(in1);
            StructureAlgebra A = algebra_from_json(ja);
            Subspace r = radical(A);
            report["command"] = "radical";
            report["input_digest"] = digest({&ja});
            report["dimension"] = r.dim();
            json basis = json::array();
            for (auto& v : r.basis) basis.push_back(to_json(v));
            report["basis"] = basis;
            report["provenance"] = "exact";
        } else if (c_chi->parsed()) {
            json ja = read_input(in1);
            StructureAlgebra A = algebra_from_json(ja);
            auto chis = characters(A, seed);
            report["command"] = "characters";
            report["input_digest"] = digest({&ja});
            json out = json::array();
            for (auto& chi : chis) out.push_back(to_json(chi));
            report["characters"] = out;
        } else if (c_cov->parsed()) {
            json ja = read_input(in1);
            FlatAlgebraBundle B = bundle_from_json(ja);
            CoveringSpace cov = spectrum_covering(B, seed);
            section_characters(B, cov, seed); // verification pass
            report["command"] = "cover";
            report["input_digest"] = digest({&ja});
            report["covering"] = to_json(cov);
            if (!dot_path.empty()) {
                std::ofstream dot(dot_path);
                dot << covering_to_dot(cov);
            }
        } else if (c_h->parsed()) {
            json ja = read_input(in1);
            SimplicialBase K = complex_from_json(ja);
            Homology h = homology(K, degree);
            report["command"] = "h";
            report["input_digest"] = digest({&ja});
            report["degree"] = degree;
            report["betti"] = h.betti;
            report["torsion"] = h.torsion;
            report["provenance"] = "exact";
        } else if (c_ab->parsed()) {
            json ja = read_input(in1);
            auto inv = abelianization(presentation_from_json(ja));
            report["command"] = "abelianize";
            report["input_digest"] = digest({&ja});
            report["rank"] = inv.rank;
            report["torsion"] = inv.torsion;
            report["provenance"] = "exact";
        } else if (c_ct->parsed()) {
            json ja = read_input(in1);
            NcpSystem sys = system_from_json(ja);
            std::vector<SectionFamily> candidates;
            if (!candidates_path.empty())
                for (auto& c : read_input(candidates_path)) candidates.push_back(section_from_json(c));
            TrivialNcpVerdict tv =
                candidates.empty() || !std::holds_alternative<FlatAlgebraBundle>(sys)
                    ? check_trivial_ncp(sys)
                    : check_trivial_ncp(std::get<FlatAlgebraBundle>(sys), candidates);
            report = to_json(tv);
            report["schema"] = "ncpt-report/1";
            report["command"] = "check-trivial";
            report["input_digest"] = digest({&ja});
            report["seed"] = seed;
            if (ja.contains("gallery")) report["gallery"] = ja["gallery"];
        } else if (c_cn->parsed()) {
            json ja = read_input(in1);
            NcpSystem sys = system_from_json(ja);
            NcpVerdict nv = check_ncp(sys);
            TrivialNcpVerdict tv = check_trivial_ncp(sys);
            report = to_json(nv);
            report["schema"] = "ncpt-report/1";
            report["command"] = "check-ncp";
            report["input_digest"] = digest({&ja});
            report["seed"] = seed;
            report["trivial"] = tag_name(tv.tag);
            if (tv.obstruction) report["trivial_certificate"] = to_json(*tv.obstruction);
            if (ja.contains("gallery")) report["gallery"] = ja["gallery"];
        } else if (c_rec->parsed()) {
            json ja = read_input(in1);
            NcpSystem sys = system_from_json(ja);
            auto* B = std::get_if<FlatAlgebraBundle>(&sys);
            if (!B) throw std::runtime_error("reconstruct: flat-bundle system required");
            ReconstructionReport rep = reconstruct_principal_data(*B, check_ncp(sys));
            report = to_json(rep);
            report["schema"] = "ncpt-report/1";
            report["command"] = "reconstruct";
            report["input_digest"] = digest({&ja});
            if (!rep.ok) {
                std::cerr << "reconstruct: " << rep.note << "\n";
                std::cout << report.dump(2) << "\n";
                return 1;
            }
        } else if (c_loc->parsed()) {
            json ja = read_input(in1), jf = read_input(f_path);
            NcpSystem sys = system_from_json(ja);
            auto* B = std::get_if<FlatAlgebraBundle>(&sys);
            if (!B) throw std::runtime_error("localize: flat-bundle system required");
            LocalizedSystem loc = localize_bundle_system(*B, weight_from_json(jf));
            report["command"] = "localize";
            report["input_digest"] = digest({&ja, &jf});
            report["zero_system"] = loc.zero;
            if (!loc.zero) report["system"] = to_json(*loc.bundle);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    int code = exit_code_for(report);
    report["timing_ms"] = clock.ms();
    std::cout << report.dump(2) << "\n";
    return code;
}
