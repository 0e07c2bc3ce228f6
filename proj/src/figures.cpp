// figures.cpp: tables for spectra, occupations and bound states

#include "wqed/figures.hpp"

#include <cmath>
#include <numbers>

#include "wqed/boundstates.hpp"
#include "wqed/errors.hpp"
#include "wqed/scattering.hpp"

namespace wqed {

std::size_t Table::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    throw InvalidInput("table has no column '" + name + "'");
}

std::vector<double> Table::column(const std::string& name) const {
    std::size_t idx = column_index(name);
    if (!label_column.empty()) {
        if (idx == 0) throw InvalidInput("column '" + name + "' is the text label column");
        --idx;
    }
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row.at(idx));
    return out;
}

FigureId parse_figure_id(const std::string& name) {
    if (name == "fig5d") return FigureId::Fig5d;
    if (name == "fig7") return FigureId::Fig7;
    if (name == "fig9") return FigureId::Fig9;
    throw InvalidInput("unknown figure '" + name + "' (expected fig5d, fig7 or fig9)");
}

const char* to_string(FigureId id) {
    switch (id) {
    case FigureId::Fig5d: return "fig5d";
    case FigureId::Fig7: return "fig7";
    case FigureId::Fig9: return "fig9";
    }
    return "?";
}

ModelParams figure_params(const FigureCase& c) {
    ModelParams p;
    p.omega = c.omega;
    p.Omega = c.Omega;
    p.G = kFigureCoupling;
    p.g = 1.0;
    return p;
}

Table spectrum_table(const ModelParams& p, std::span<const double> k_grid) {
    Table t;
    t.columns = {"k", "E", "T", "R", "Re_s", "Im_s", "uA2", "uB2"};
    const auto sols = transmission_spectrum(p, k_grid);
    t.rows.reserve(sols.size());
    for (const auto& s : sols) {
        t.rows.push_back({s.k, s.E, s.T, s.R, s.s.real(), s.s.imag(), std::norm(s.u_A), std::norm(s.u_B)});
    }
    return t;
}

Table bound_table(const ModelParams& p) {
    Table t;
    t.label_column = "branch";
    t.columns = {"branch", "E_b", "beta", "u0", "u_e", "localization_length", "norm_check"};
    for (const auto& st : bound_states(p)) {
        t.labels.emplace_back(to_string(st.branch));
        t.rows.push_back({st.E_b, st.beta, st.u0, st.u_e, st.localization_length(), st.norm_check});
    }
    return t;
}

namespace {

Table fig5d(std::span<const double> k_grid) {
    Table t;
    t.columns = {"k"};
    std::vector<std::vector<ScatteringSolution>> cases;
    for (const auto& c : kFigureCases) {
        t.columns.push_back(std::string("T_") + c.label);
        cases.push_back(transmission_spectrum(figure_params(c), k_grid));
    }
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        t.rows.push_back({k_grid[i], cases[0][i].T, cases[1][i].T, cases[2][i].T});
    }
    return t;
}

Table fig7(std::span<const double> k_grid) {
    Table t;
    t.columns = {"k"};
    std::vector<std::vector<ScatteringSolution>> cases;
    for (const auto& c : kFigureCases) {
        t.columns.push_back(std::string("uA2_") + c.label);
        t.columns.push_back(std::string("uB2_") + c.label);
        cases.push_back(transmission_spectrum(figure_params(c), k_grid));
    }
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        std::vector<double> row{k_grid[i]};
        for (const auto& sols : cases) {
            row.push_back(std::norm(sols[i].u_A));
            row.push_back(std::norm(sols[i].u_B));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table fig9() {
    const ModelParams p = figure_params(kFigureCases[2]);
    const auto states = bound_states(p);
    Table t;
    t.columns = {"j", "u1", "u2", "abs_u1", "abs_u2"};
    t.metadata = {{"E_b1", states[0].E_b},
                  {"E_b2", states[1].E_b},
                  {"beta1", states[0].beta},
                  {"beta2", states[1].beta}};
    for (long j = -30; j <= 30; ++j) {
        const double u1 = states[0].amplitude(j);
        const double u2 = states[1].amplitude(j);
        t.rows.push_back({static_cast<double>(j), u1, u2, std::abs(u1), std::abs(u2)});
    }
    return t;
}

} // namespace

Table figure_table(FigureId id, std::span<const double> k_grid) {
    switch (id) {
    case FigureId::Fig5d: return fig5d(k_grid);
    case FigureId::Fig7: return fig7(k_grid);
    case FigureId::Fig9: return fig9();
    }
    throw InvalidInput("unknown figure");
}

std::vector<double> default_k_grid() {
    return linear_grid(0.01 * std::numbers::pi, 0.99 * std::numbers::pi, 1001);
}

} // namespace wqed
