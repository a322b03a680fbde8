#include "penergy/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "penergy/format.hpp"

namespace penergy::io {

const char* const kDatasetCsvHeader =
    "id,codec,decoder,energy_J,time_s,Ir,I1mr,ILmr,Dr,D1mr,DLmr,Dw,D1mw,DLmw";

namespace {

constexpr std::size_t kColumnCount = 14;

void check_text_field(const std::string& value, const char* column) {
    if (value.find_first_of(",\"\n\r") != std::string::npos) {
        throw ValidationError(std::string(column) +
                              " field may not contain commas, quotes, or newlines: '" +
                              value + "'");
    }
}

std::string record_to_row(const MeasurementRecord& record) {
    check_text_field(record.id, "id");
    check_text_field(record.codec, "codec");
    check_text_field(record.decoder, "decoder");

    std::ostringstream row;
    row << record.id << ',' << record.codec << ',' << record.decoder << ','
        << format::real(record.energy_joules) << ','
        << format::real(record.decode_time_seconds);
    for (EventKind kind : all_event_kinds()) {
        row << ',' << record.events.count(kind);
    }
    return row.str();
}

std::vector<std::string> split_row(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            break;
        }
        fields.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

[[noreturn]] void fail(const std::string& source, int line_no, const std::string& what) {
    std::ostringstream msg;
    msg << source << ":" << line_no << ": " << what;
    throw ParseError(msg.str());
}

double parse_real(const std::string& token, const std::string& source, int line_no,
                  const char* column) {
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (token.empty() || end != token.c_str() + token.size() || !std::isfinite(value)) {
        fail(source, line_no, std::string("invalid ") + column + " value '" + token + "'");
    }
    return value;
}

std::uint64_t parse_count(const std::string& token, const std::string& source, int line_no,
                          const char* column) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
        fail(source, line_no,
             std::string("invalid ") + column + " count '" + token +
                 "' (expected a non-negative decimal integer)");
    }
    return value;
}

}  // namespace

std::string dataset_to_csv(const Dataset& dataset) {
    std::string out = kDatasetCsvHeader;
    out += '\n';
    for (const auto& record : dataset.records()) {
        out += record_to_row(record);
        out += '\n';
    }
    return out;
}

void write_dataset_csv(const std::string& path, const Dataset& dataset) {
    std::ofstream stream(path, std::ios::binary | std::ios::trunc);
    if (!stream) throw ParseError("cannot open '" + path + "' for writing");
    stream << dataset_to_csv(dataset);
    if (!stream) throw ParseError("failed writing dataset to '" + path + "'");
}

Dataset dataset_from_csv(std::istream& input, const std::string& source_name) {
    std::string line;
    if (!std::getline(input, line)) {
        throw ParseError(source_name + ": empty file, expected the dataset header");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kDatasetCsvHeader) {
        throw ParseError(source_name + ":1: unexpected header '" + line + "' (expected '" +
                         kDatasetCsvHeader + "')");
    }

    std::vector<MeasurementRecord> records;
    int line_no = 1;
    while (std::getline(input, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        const auto fields = split_row(line);
        if (fields.size() != kColumnCount) {
            std::ostringstream what;
            what << "expected " << kColumnCount << " columns, found " << fields.size();
            fail(source_name, line_no, what.str());
        }

        std::array<std::uint64_t, kEventKindCount> counts{};
        for (int i = 0; i < kEventKindCount; ++i) {
            counts[static_cast<std::size_t>(i)] =
                parse_count(fields[static_cast<std::size_t>(5 + i)], source_name, line_no,
                            std::string(EventKind::from_index(i).cachegrind_name()).c_str());
        }

        records.push_back(MeasurementRecord{
            fields[0],
            fields[1],
            fields[2],
            parse_real(fields[3], source_name, line_no, "energy_J"),
            parse_real(fields[4], source_name, line_no, "time_s"),
            EventVector::from_counts(counts),
        });
    }

    if (records.empty()) {
        throw ParseError(source_name + ": dataset contains no records");
    }
    return Dataset(std::move(records));
}

Dataset read_dataset_csv(const std::string& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) throw ParseError("cannot open dataset '" + path + "'");
    return dataset_from_csv(stream, path);
}

void append_record_csv(const std::string& path, const MeasurementRecord& record) {
    validate_record(record);

    std::vector<MeasurementRecord> records;
    if (std::filesystem::exists(path) && std::filesystem::file_size(path) > 0) {
        records = read_dataset_csv(path).records();
        for (const auto& existing : records) {
            if (existing.id == record.id) {
                throw ValidationError("dataset '" + path + "' already contains id '" +
                                      record.id + "'");
            }
        }
    }
    records.push_back(record);
    write_dataset_csv(path, Dataset(std::move(records)));
}

}  // namespace penergy::io
