// Command-line front end: generate covering structures, verify chains,
// run the 3-link oracle, export SVG/CSV.
//
// Exit codes: 0 success (or verdict holds), 1 negative verdict,
// 2 usage/parse/cost errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cubecover/construct.hpp"
#include "cubecover/document.hpp"
#include "cubecover/export.hpp"
#include "cubecover/oracle.hpp"
#include "cubecover/verify.hpp"

namespace {

using namespace cubecover;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DocumentError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DocumentError("cannot write '" + path + "'");
    out << content;
}

std::vector<Rat> parse_rat_list(const std::string& text) {
    std::vector<Rat> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string piece = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        out.push_back(Rat::parse(piece));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

int cmd_generate(int k, const std::string& variant, const std::optional<std::string>& scale,
                 const std::optional<std::string>& heights, const std::string& out_path) {
    ChainDocument doc;
    if (variant == "shared-apex") {
        if (heights) throw std::invalid_argument("--heights applies only to the perfect variant");
        Rat s = scale ? Rat::parse(*scale) : Rat(3);
        doc = make_document(build_shared_apex_cycle(k, s));
    } else if (variant == "perfect") {
        if (scale) throw std::invalid_argument("--scale applies only to the shared-apex variant");
        doc = heights ? make_document(build_perfect_cycle(k, parse_rat_list(*heights)))
                      : make_document(build_perfect_cycle(k));
    } else if (variant == "star") {
        if (scale || heights)
            throw std::invalid_argument("star takes neither --scale nor --heights");
        doc = make_document(build_star_tree(k));
    } else {
        throw std::invalid_argument("unknown variant '" + variant + "'");
    }
    write_file(out_path, serialize_document(doc));
    return 0;
}

int cmd_verify(const std::string& in_path, const std::optional<std::string>& mode_flag) {
    ChainDocument doc = parse_document(read_file(in_path));
    if (!doc.is_chain())
        throw DocumentError("verify expects a chain document, not a star tree");
    VerifyMode mode = VerifyMode::full;
    if (mode_flag) {
        if (*mode_flag == "full")
            mode = VerifyMode::full;
        else if (*mode_flag == "fast")
            mode = VerifyMode::fast;
        else
            throw std::invalid_argument("--mode must be full or fast");
    } else if (doc.k > 10) {
        throw CostError("k > 10: pass --mode fast (or an explicit --mode full) — the full "
                        "scan runs millions of exact tests");
    }
    VerificationReport rep = verify_chain(doc.chain(), doc.k, mode);
    std::cout << report_to_json(rep, mode).dump(2) << "\n";
    bool positive = rep.optimal && rep.classification >= Classification::covering_cycle;
    return positive ? 0 : 1;
}

int cmd_oracle(int k, const std::string& mode, std::uint64_t samples, std::uint64_t seed,
               const std::string& box_text, unsigned threads) {
    if (mode == "exhaustive") {
        LimitSearchOptions opt;
        opt.threads = threads;
        OracleOutcome out = four_node_limit_exhaustive(k, opt);
        std::cout << oracle_to_json(out, k, "exhaustive").dump(2) << "\n";
        std::cerr << "oracle: " << out.stats.assignments << " assignments in "
                  << out.stats.wall_seconds << "s\n";
        return out.holds ? 0 : 1;
    }
    if (mode == "random") {
        Rat box = Rat::parse(box_text);
        OracleOutcome out = four_node_limit_sample(k, samples, seed, box);
        std::cout << oracle_to_json(out, k, "random", seed, box).dump(2) << "\n";
        std::cerr << "sampler: " << samples << " chains in " << out.stats.wall_seconds << "s\n";
        return out.holds ? 0 : 1;
    }
    throw std::invalid_argument("--mode must be exhaustive or random");
}

int cmd_export(const std::string& in_path, const std::string& format, const std::string& proj,
               const std::string& out_path) {
    ChainDocument doc = parse_document(read_file(in_path));
    if (format == "csv") {
        write_file(out_path, to_csv(doc));
        return 0;
    }
    if (format == "svg") {
        std::size_t comma = proj.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("--proj needs two comma-separated indices");
        std::size_t px = std::stoul(proj.substr(0, comma));
        std::size_t py = std::stoul(proj.substr(comma + 1));
        write_file(out_path, to_svg(doc, px, py));
        return 0;
    }
    throw std::invalid_argument("--format must be svg or csv");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum-link covering cycles for the nodes of a k-cube, in exact rationals"};
    app.require_subcommand(1);

    int k = 2;
    std::string variant, out_path, in_path;
    std::optional<std::string> scale, heights, verify_mode;
    std::string oracle_mode = "exhaustive";
    std::uint64_t samples = 100000, seed = 0;
    std::string box = "3";
    unsigned threads = 0;
    std::string format = "svg", proj = "0,1";

    auto* gen = app.add_subcommand("generate", "Build a covering structure and write it as JSON");
    gen->add_option("--k", k, "dimension (>= 2)")->required();
    gen->add_option("--variant", variant, "shared-apex | perfect | star")->required();
    gen->add_option("--scale", scale, "triangle scale p > 1 (shared-apex; default 3)");
    gen->add_option("--heights", heights, "comma-separated apex heights (perfect)");
    gen->add_option("--out", out_path, "output path")->required();

    auto* ver = app.add_subcommand("verify", "Verify a chain document; prints a report");
    ver->add_option("--in", in_path, "chain document")->required();
    ver->add_option("--mode", verify_mode, "full | fast (full is the default for k <= 10)");

    auto* orc = app.add_subcommand("oracle", "Check that no 3-link chain meets 5 nodes");
    orc->add_option("--k", k, "dimension")->required();
    orc->add_option("--mode", oracle_mode, "exhaustive | random");
    orc->add_option("--samples", samples, "sample count (random mode)");
    orc->add_option("--seed", seed, "RNG seed (random mode)");
    orc->add_option("--box", box, "coordinate bound (random mode)");
    orc->add_option("--threads", threads, "worker threads (exhaustive mode; 0 = auto)");

    auto* exp = app.add_subcommand("export", "Render a document as SVG or CSV");
    exp->add_option("--in", in_path, "chain document")->required();
    exp->add_option("--format", format, "svg | csv");
    exp->add_option("--proj", proj, "projection coordinate pair, e.g. 0,3 (svg)");
    exp->add_option("--out", out_path, "output path")->required();

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_generate(k, variant, scale, heights, out_path);
        if (ver->parsed()) return cmd_verify(in_path, verify_mode);
        if (orc->parsed()) return cmd_oracle(k, oracle_mode, samples, seed, box, threads);
        if (exp->parsed()) return cmd_export(in_path, format, proj, out_path);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
