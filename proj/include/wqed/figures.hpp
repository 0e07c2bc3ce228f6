// figures.hpp: data tables behind the transmission, occupation and bound-state figures

#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wqed/model.hpp"

namespace wqed {

/// A rectangular numeric table with an optional leading text column.
struct Table {
    std::vector<std::string> columns;                      // includes label_column when set
    std::string label_column;                              // empty = no text column
    std::vector<std::string> labels;                       // one per row when label_column is set
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, double>> metadata;  // scalar results attached to the table

    std::size_t column_index(const std::string& name) const;
    std::vector<double> column(const std::string& name) const;
};

enum class FigureId { Fig5d, Fig7, Fig9 };

FigureId parse_figure_id(const std::string& name);
const char* to_string(FigureId id);

/// The three node configurations compared in the transmission and occupation
/// figures (G = 3, g = 1): a = (omega 3, Omega 2) with Omega inside the band,
/// b = (5, 8) and c = (15, 5) with Omega outside.
struct FigureCase {
    const char* label;
    double omega;
    double Omega;
};
inline constexpr double kFigureCoupling = 3.0;
inline constexpr FigureCase kFigureCases[3] = {{"a", 3.0, 2.0}, {"b", 5.0, 8.0}, {"c", 15.0, 5.0}};

ModelParams figure_params(const FigureCase& c);

/// Scattering table with columns k,E,T,R,Re_s,Im_s,uA2,uB2.
Table spectrum_table(const ModelParams& p, std::span<const double> k_grid);

/// Bound-state summary, one row per branch.
Table bound_table(const ModelParams& p);

/// fig5d: k,T_a,T_b,T_c. fig7: k,uA2_a,uB2_a,... fig9: j,u1,u2,abs_u1,abs_u2
/// for |j| <= 30 with E_b1, E_b2, beta1, beta2 as metadata. k_grid is ignored
/// for fig9.
Table figure_table(FigureId id, std::span<const double> k_grid);

/// 1001 points on [0.01 pi, 0.99 pi].
std::vector<double> default_k_grid();

} // namespace wqed
