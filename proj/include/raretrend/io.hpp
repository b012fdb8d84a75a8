#pragma once

// Delimited-text ingestion for observation series and prior files.
//
// Series files carry a header row naming either (start, end, count) or
// (center, length, count) -- exactly one scheme per file. Prior files carry
// (center, a) with an optional trailing (q) column. Fields use decimal
// points; decimal commas are rejected with a pointed message. The delimiter
// (comma, semicolon, tab or whitespace) is sniffed from the header row.

#include <stdexcept>
#include <string>

#include "raretrend/model.hpp"

namespace raretrend {

// Malformed input file; the message names the 1-based row involved.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ObservationSeries read_series_file(const std::string& path);

// Reads a prior aligned against `data`: entry count must match and every
// prior center must agree with the series center within kPriorAlignTolerance.
// Blend mode requires the q column.
PriorSpec read_prior_file(const std::string& path, const ObservationSeries& data,
                          WeightMode mode);

// Writes (center, observed, fitted) rows for plotting.
void write_plot_file(const std::string& path, const ObservationSeries& series,
                     const std::vector<double>& fitted);

}  // namespace raretrend
