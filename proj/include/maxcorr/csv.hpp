#pragma once

#include <string>
#include <vector>

#include "maxcorr/experiment.hpp"
#include "maxcorr/independence.hpp"
#include "maxcorr/types.hpp"

namespace maxcorr {

// Numeric CSV, rows = observations, columns = variables. An optional single
// header line is detected (any non-numeric field) and skipped. Throws
// csv_error on malformed content, matrix_error on bad shape/non-finite.
DataMatrix read_matrix_csv(const std::string& path);

void write_matrix_csv(const std::string& path, const PairStatMatrix& m);

void write_rows_csv(const std::string& path, const std::vector<ExperimentRow>& rows);

}  // namespace maxcorr
