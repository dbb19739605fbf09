#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mafr/matrix.hpp"
#include "mafr/smoothing.hpp"

namespace mafr {

enum class CsvFormat { Auto, Long, Wide };

// Curve observations from CSV.
//
// Long format: header `curve_id,t,value`, one observation per row, every curve
// on the same strictly increasing grid.
//
// Wide format: a header row of time points (optionally preceded by an id
// column label) and one row per curve, e.g. day-per-row tables with 48
// half-hourly columns.
ObservationGrid read_observations_csv(std::istream& in, CsvFormat format = CsvFormat::Auto);
ObservationGrid read_observations_csv_file(const std::string& path,
                                           CsvFormat format = CsvFormat::Auto);

void write_long_csv(std::ostream& out, const ObservationGrid& grid);
void write_wide_csv(std::ostream& out, const ObservationGrid& grid);

// Matrix with a header of column names and an optional leading id column.
void write_matrix_csv(std::ostream& out, const Matrix& m,
                      const std::vector<std::string>& column_names,
                      const std::string& id_column_name = "",
                      const std::vector<std::string>& ids = {});

// Round-trip decimal formatting (17 significant digits).
std::string format_double(double value);

} // namespace mafr
