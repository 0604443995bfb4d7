#include "envlab/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace envlab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string field_to_csv(const Field& f) {
    const Grid2& g = *f.grid;
    std::ostringstream os;
    os << "x,y,value\n";
    for (int idx = 0; idx < g.size(); ++idx) {
        if (g.is_exterior(idx)) continue;
        os << format_double(g.coord_x[idx]) << ',' << format_double(g.coord_y[idx]) << ','
           << format_double(f.values[idx]) << '\n';
    }
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open for writing: " + path);
    out << content;
}

void ensure_directory(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw error("cannot create directory " + path + ": " + ec.message());
}

void write_envelope_report(const std::string& dir, const std::string& stem,
                           const EnvelopeReport& report) {
    ensure_directory(dir);
    write_text_file(dir + "/" + stem + ".csv", field_to_csv(report.envelope));
    nlohmann::json j;
    j["iterations"] = report.iterations;
    j["final_update"] = report.final_update;
    j["converged"] = report.converged;
    j["contact_fraction"] = report.contact_fraction;
    j["contact_tol"] = report.contact_tol;
    write_text_file(dir + "/" + stem + ".json", j.dump(2) + "\n");
}

void write_slab(const std::string& dir, const GeodesicSlab& slab) {
    ensure_directory(dir);
    nlohmann::json j;
    j["t_grid"] = slab.t_grid;
    j["C_grid"] = slab.C_grid;
    j["delta_C"] = slab.delta_C;
    j["M"] = slab.M;
    nlohmann::json stats = nlohmann::json::array();
    for (const CSolveStats& s : slab.stats)
        stats.push_back({{"C", s.C},
                         {"iterations", s.iterations},
                         {"final_update", s.final_update},
                         {"converged", s.converged}});
    j["per_C"] = stats;
    write_text_file(dir + "/manifest.json", j.dump(2) + "\n");
    for (size_t it = 0; it < slab.planes.size(); ++it) {
        char name[32];
        std::snprintf(name, sizeof(name), "plane_%03zu.csv", it);
        write_text_file(dir + "/" + name, field_to_csv(slab.planes[it]));
    }
}

}  // namespace envlab
