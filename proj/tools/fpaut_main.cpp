#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "fpaut/cli.hpp"

namespace {

int finish(const fpaut::cli::CmdResult& res, const std::string& out_path,
           const std::string& dot_path) {
    if (res.exit_code == fpaut::cli::kUsageError) {
        std::cerr << "error: " << res.message << "\n";
        return res.exit_code;
    }
    std::string text = res.output.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return fpaut::cli::kUsageError;
        }
        out << text;
    }
    if (!dot_path.empty() && !res.dot.empty()) {
        std::ofstream dot(dot_path);
        if (!dot) {
            std::cerr << "error: cannot write " << dot_path << "\n";
            return fpaut::cli::kUsageError;
        }
        dot << res.dot;
    }
    return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"automorphisms of free products: presentations, covers, embeddings"};
    app.require_subcommand(1);

    std::string config_path, out_path, dot_path;
    std::string level = "exact";
    int n = 4;
    int max_len = 4;

    CLI::App* relations = app.add_subcommand("relations", "verify the presentation relations");
    relations->add_option("--config", config_path, "group config (JSON)")->required();
    relations->add_option("--level", level, "exact | inn | innN");
    relations->add_option("--out", out_path, "write the JSON report here");

    CLI::App* cover = app.add_subcommand("cover", "build the covering graph of N");
    cover->add_option("--config", config_path, "group config (JSON)")->required();
    cover->add_option("--emit-dot", dot_path, "write the graph in DOT format");
    cover->add_option("--out", out_path, "write the JSON summary here");

    CLI::App* embed = app.add_subcommand("embed", "run the full embedding pipeline");
    embed->add_option("--config", config_path, "group config (JSON)")->required();
    embed->add_option("--out", out_path, "write the JSON report here");

    CLI::App* wn = app.add_subcommand("wn", "universal Coxeter pipeline W_n (n even)");
    wn->add_option("--n", n, "number of Z/2 factors")->required();
    wn->add_option("--out", out_path, "write the JSON report here");

    CLI::App* w3f4 = app.add_subcommand("w3f4", "the explicit Out(W_3) -> Out(F_4) map");
    w3f4->add_option("--max-len", max_len, "probe length bound");
    w3f4->add_option("--out", out_path, "write the JSON report here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (relations->parsed())
            return finish(fpaut::cli::cmd_relations(fpaut::cli::load_config_file(config_path), level),
                          out_path, dot_path);
        if (cover->parsed())
            return finish(fpaut::cli::cmd_cover(fpaut::cli::load_config_file(config_path),
                                                !dot_path.empty()),
                          out_path, dot_path);
        if (embed->parsed())
            return finish(fpaut::cli::cmd_embed(fpaut::cli::load_config_file(config_path)),
                          out_path, dot_path);
        if (wn->parsed()) return finish(fpaut::cli::cmd_wn(n), out_path, dot_path);
        if (w3f4->parsed()) return finish(fpaut::cli::cmd_w3f4(max_len), out_path, dot_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return fpaut::cli::kUsageError;
    }
    return fpaut::cli::kUsageError;
}
