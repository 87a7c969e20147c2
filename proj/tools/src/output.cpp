#include "monoblock/cli/output.hpp"

#include "monoblock/error.hpp"

#include <cstdio>
#include <fstream>
#include <memory>

namespace monoblock::cli {

using nlohmann::json;

void write_field_csv(const std::filesystem::path& path, const Mesh& mesh, const Field& field) {
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(std::fopen(path.string().c_str(), "w"), &std::fclose);
    if (!f) {
        raise(ErrorCode::Io, "cannot write " + path.string());
    }
    std::fputs("x,y,value\n", f.get());
    for (int j = 0; j <= mesh.ny(); ++j) {
        for (int i = 0; i <= mesh.nx(); ++i) {
            std::fprintf(f.get(), "%.17g,%.17g,%.17g\n", mesh.x(i), mesh.y(j), field(i, j));
        }
    }
    if (std::ferror(f.get())) {
        raise(ErrorCode::Io, "write error on " + path.string());
    }
}

std::string field_file_name(int alpha, int m) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "solution_c%d_m%04d.csv", alpha + 1, m);
    return buf;
}

void write_json(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path);
    if (!out) {
        raise(ErrorCode::Io, "cannot write " + path.string());
    }
    out << doc.dump(2) << '\n';
    if (!out) {
        raise(ErrorCode::Io, "write error on " + path.string());
    }
}

json to_json(const MeshSpec& spec) {
    return {{"l1", spec.l1}, {"l2", spec.l2}, {"T", spec.T}, {"Nx", spec.nx}, {"Ny", spec.ny}, {"Nt", spec.nt}};
}

json to_json(const TauStatus& tau) {
    return {{"ok", tau.ok}, {"tau", tau.tau}, {"beta_max", tau.beta_max}, {"tau_beta", tau.tau * tau.beta_max},
            {"beta", tau.beta}};
}

json to_json(const LevelReport& level, bool timing) {
    json j = {{"m", level.m},
              {"iterations", level.iterations},
              {"method", to_string(level.method)},
              {"residuals",
               {{"upper1", level.residuals[0]},
                {"upper2", level.residuals[1]},
                {"lower1", level.residuals[2]},
                {"lower2", level.residuals[3]}}},
              {"residual", level.residual},
              {"c", level.c},
              {"sandwich_violations", level.sandwich_violations},
              {"sign_violations", level.sign_violations},
              {"structure_failures", level.structure_failures},
              {"upper_lower_gap", level.upper_lower_gap}};
    if (timing) {
        j["wall_seconds"] = level.wall_seconds;
    }
    return j;
}

json to_json(const SolveReport& report, bool timing) {
    json levels = json::array();
    for (const auto& l : report.levels) {
        levels.push_back(to_json(l, timing));
    }
    return {{"method", to_string(report.method)},
            {"class", report.cls == QuasiMonotone::Nondecreasing ? "nondecreasing" : "nonincreasing"},
            {"tau", to_json(report.tau)},
            {"total_violations", report.total_violations()},
            {"total_structure_failures", report.total_structure_failures()},
            {"levels", levels}};
}

}  // namespace monoblock::cli
