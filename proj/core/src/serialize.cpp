#include "entsearch/serialize.hpp"

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <system_error>

#include "json.hpp"

namespace entsearch {

namespace {

using nlohmann::json;

json complex_pair(const Complex& z) {
    return json::array({z.real(), z.imag()});
}

json trace_to_json(const SearchTrace& trace) {
    json events = json::array();
    for (const SearchEvent& event : trace.events) {
        events.push_back({{"depth", event.depth},
                          {"lo", event.lo},
                          {"hi", event.hi},
                          {"verdict", to_string(event.verdict)},
                          {"route", to_string(event.route)},
                          {"copies", event.copies},
                          {"inferred", event.inferred}});
    }
    return {{"events", std::move(events)},
            {"oracle_queries", trace.oracle_queries},
            {"detector_calls", trace.detector_calls},
            {"pruned_mass", trace.pruned_mass},
            {"depth_reached", trace.depth_reached}};
}

} // namespace

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

std::string state_to_json(const PureState& psi) {
    json amplitudes = json::array();
    for (std::int64_t i = 0; i < psi.dim(); ++i) {
        amplitudes.push_back(complex_pair(psi.amplitudes()(i)));
    }
    const json j = {{"query_qubits", psi.layout().query_qubits()},
                    {"answer_qubits", psi.layout().answer_qubits()},
                    {"amplitudes", std::move(amplitudes)}};
    return j.dump();
}

std::string density_to_json(const DensityOp& rho) {
    json matrix = json::array();
    for (std::int64_t i = 0; i < rho.dim(); ++i) {
        json row = json::array();
        for (std::int64_t j = 0; j < rho.dim(); ++j) {
            row.push_back(complex_pair(rho.matrix()(i, j)));
        }
        matrix.push_back(std::move(row));
    }
    const json j = {{"dims", json::array({rho.dim_a(), rho.dim_b()})},
                    {"matrix", std::move(matrix)}};
    return j.dump();
}

DensityOp density_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid density JSON: ") + e.what(), 1);
    }
    try {
        const auto dims = j.at("dims");
        if (!dims.is_array() || dims.size() != 2) {
            throw ParseError("density JSON needs a two-element dims array", 1);
        }
        const std::int64_t dim_a = dims.at(0).get<std::int64_t>();
        const std::int64_t dim_b = dims.at(1).get<std::int64_t>();
        const auto& matrix = j.at("matrix");
        const std::int64_t dim = static_cast<std::int64_t>(matrix.size());
        Eigen::MatrixXcd m(dim, dim);
        for (std::int64_t r = 0; r < dim; ++r) {
            const auto& row = matrix.at(static_cast<std::size_t>(r));
            if (static_cast<std::int64_t>(row.size()) != dim) {
                throw ParseError("density matrix rows must form a square", 1);
            }
            for (std::int64_t c = 0; c < dim; ++c) {
                const auto& entry = row.at(static_cast<std::size_t>(c));
                m(r, c) = Complex{entry.at(0).get<double>(), entry.at(1).get<double>()};
            }
        }
        return DensityOp::make(dim_a, dim_b, std::move(m));
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed density JSON: ") + e.what(), 1);
    }
}

std::string verdict_to_json(const DetectionVerdict& v) {
    const json j = {{"verdict", to_string(v.verdict)},
                    {"route", to_string(v.route)},
                    {"statistic", v.statistic},
                    {"threshold", v.threshold},
                    {"copies", v.copies}};
    return j.dump();
}

std::string outcome_to_json(const SearchOutcome& outcome, int variable_count) {
    json solutions = json::array();
    for (const Assignment& a : outcome.solutions) {
        solutions.push_back({{"index", a.index()}, {"bits", a.to_string()}});
    }
    const json j = {{"status", to_string(outcome.status)},
                    {"variable_count", variable_count},
                    {"solutions", std::move(solutions)},
                    {"trace", trace_to_json(outcome.trace)}};
    return j.dump();
}

std::string cost_report_to_json(const CostReport& report) {
    const json j = {{"detector_calls", report.detector_calls},
                    {"oracle_queries", report.oracle_queries},
                    {"network_units", report.network_units},
                    {"verification_units", report.verification_units},
                    {"asymptotic_search", report.asymptotic_search},
                    {"asymptotic_sat", report.asymptotic_sat}};
    return j.dump();
}

std::string trace_to_csv(const SearchTrace& trace) {
    std::string out = "depth,lo,hi,verdict,copies\n";
    for (const SearchEvent& event : trace.events) {
        out += std::to_string(event.depth);
        out += ',';
        out += std::to_string(event.lo);
        out += ',';
        out += std::to_string(event.hi);
        out += ',';
        out += to_string(event.verdict);
        out += ',';
        out += std::to_string(event.copies);
        out += '\n';
    }
    return out;
}

std::string grid_to_csv(const std::vector<DistinguishabilityPoint>& grid) {
    std::string out = "L,N,delta,log10_deltaN,deltaN,bound\n";
    for (const DistinguishabilityPoint& point : grid) {
        out += std::to_string(point.L);
        out += ',';
        out += std::to_string(point.N);
        out += ',';
        out += format_double(point.delta);
        out += ',';
        out += format_double(point.log10_deltaN);
        out += ',';
        out += format_double(point.deltaN);
        out += ',';
        out += format_double(point.bound);
        out += '\n';
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open " + tmp + " for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw std::runtime_error("short write to " + tmp);
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw std::runtime_error("cannot move " + tmp + " into place: " + ec.message());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

} // namespace entsearch
