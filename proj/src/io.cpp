#include "raretrend/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "raretrend/bayes.hpp"

namespace raretrend {
namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> fields;
    if (delim == ' ') {
        std::istringstream in(line);
        std::string tok;
        while (in >> tok) fields.push_back(tok);
        return fields;
    }
    std::string cur;
    for (char c : line) {
        if (c == delim) {
            fields.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(trim(cur));
    return fields;
}

char sniff_delimiter(const std::string& header) {
    if (header.find(';') != std::string::npos) return ';';
    if (header.find(',') != std::string::npos) return ',';
    if (header.find('\t') != std::string::npos) return '\t';
    return ' ';
}

double parse_number(const std::string& field, int row) {
    const std::string tok = trim(field);
    double value = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last || tok.empty()) {
        std::string msg = "row " + std::to_string(row) + ": cannot parse '" + tok +
                          "' as a number";
        if (tok.find(',') != std::string::npos)
            msg += " (decimal commas are not supported; use decimal points)";
        throw ParseError(msg);
    }
    return value;
}

struct Table {
    std::vector<std::string> header;      // lowercased column names
    std::vector<std::vector<double>> rows;
    std::vector<int> row_numbers;         // 1-based file rows per record
    char delimiter = ',';
};

Table read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");

    Table table;
    std::string line;
    int row = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (!have_header) {
            table.delimiter = sniff_delimiter(line);
            for (auto& f : split(line, table.delimiter))
                table.header.push_back(lower(trim(f)));
            have_header = true;
            continue;
        }
        const auto fields = split(line, table.delimiter);
        if (fields.size() != table.header.size()) {
            std::string msg = "row " + std::to_string(row) + ": expected " +
                              std::to_string(table.header.size()) + " fields, got " +
                              std::to_string(fields.size());
            if (table.delimiter == ',' && fields.size() > table.header.size())
                msg += " (decimal commas are not supported; use decimal points)";
            throw ParseError(msg);
        }
        std::vector<double> values;
        values.reserve(fields.size());
        for (const auto& f : fields) values.push_back(parse_number(f, row));
        table.rows.push_back(std::move(values));
        table.row_numbers.push_back(row);
    }
    if (!have_header) throw ParseError("'" + path + "' is empty (header row required)");
    return table;
}

}  // namespace

ObservationSeries read_series_file(const std::string& path) {
    const Table table = read_table(path);

    const std::vector<std::string> span_scheme = {"start", "end", "count"};
    const std::vector<std::string> center_scheme = {"center", "length", "count"};
    bool spans;
    if (table.header == span_scheme) {
        spans = true;
    } else if (table.header == center_scheme) {
        spans = false;
    } else {
        throw ParseError(
            "row 1: header must be 'start,end,count' or 'center,length,count'");
    }

    ObservationSeries series;
    series.intervals.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& vals = table.rows[i];
        const int row = table.row_numbers[i];
        IntervalRecord rec;
        if (spans) {
            if (!(vals[1] > vals[0]))
                throw ParseError("row " + std::to_string(row) + ": end must exceed start");
            rec.center = 0.5 * (vals[0] + vals[1]);
            rec.length = vals[1] - vals[0];
        } else {
            rec.center = vals[0];
            rec.length = vals[1];
        }
        rec.count = vals[2];
        series.intervals.push_back(rec);
    }

    for (const auto& violation : validate(series)) {
        const int row = violation.index < table.row_numbers.size()
                            ? table.row_numbers[violation.index]
                            : 1;
        throw ParseError("row " + std::to_string(row) + ": " + violation.rule);
    }
    return series;
}

PriorSpec read_prior_file(const std::string& path, const ObservationSeries& data,
                          WeightMode mode) {
    const Table table = read_table(path);

    const std::vector<std::string> plain = {"center", "a"};
    const std::vector<std::string> weighted = {"center", "a", "q"};
    bool has_q;
    if (table.header == plain) {
        has_q = false;
    } else if (table.header == weighted) {
        has_q = true;
    } else {
        throw ParseError("row 1: prior header must be 'center,a' or 'center,a,q'");
    }
    if (mode == WeightMode::Blend && !has_q)
        throw ParseError("blend mode requires a 'q' column in the prior file");

    if (table.rows.size() != data.size())
        throw ParseError("prior has " + std::to_string(table.rows.size()) +
                         " rows for a series of length " + std::to_string(data.size()));

    PriorSpec prior;
    prior.weight_mode = mode;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& vals = table.rows[i];
        const int row = table.row_numbers[i];
        if (std::fabs(vals[0] - data.intervals[i].center) > kPriorAlignTolerance)
            throw ParseError("row " + std::to_string(row) +
                             ": prior center does not match the data center");
        if (!(vals[1] >= 0.0))
            throw ParseError("row " + std::to_string(row) + ": a must be >= 0");
        prior.entries.push_back({vals[0], vals[1]});
        if (has_q) {
            if (!(vals[2] >= 0.0 && vals[2] <= 1.0))
                throw ParseError("row " + std::to_string(row) + ": q must lie in [0, 1]");
            prior.weights.push_back(vals[2]);
        }
    }
    return prior;
}

void write_plot_file(const std::string& path, const ObservationSeries& series,
                     const std::vector<double>& fitted) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << "center,observed,fitted\n";
    out.precision(17);
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << series.intervals[i].center << ',' << series.intervals[i].count << ','
            << fitted[i] << '\n';
    }
}

}  // namespace raretrend
