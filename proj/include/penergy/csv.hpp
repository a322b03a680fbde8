#pragma once

#include <iosfwd>
#include <string>

#include "penergy/domain.hpp"

namespace penergy::io {

// Dataset CSV schema: UTF-8, LF line endings, mandatory exact header
//   id,codec,decoder,energy_J,time_s,Ir,I1mr,ILmr,Dr,D1mr,DLmr,Dw,D1mw,DLmw
// Event columns hold non-negative decimal integers; energy_J and time_s are
// decimal reals in canonical formatting. String fields must be free of
// commas, quotes, and newlines (there is no quoting).
extern const char* const kDatasetCsvHeader;

std::string dataset_to_csv(const Dataset& dataset);
void write_dataset_csv(const std::string& path, const Dataset& dataset);

Dataset dataset_from_csv(std::istream& input, const std::string& source_name = "<input>");
Dataset read_dataset_csv(const std::string& path);

// Appends one record, creating the file (with header) if needed. Rejects
// duplicate ids against the existing rows.
void append_record_csv(const std::string& path, const MeasurementRecord& record);

}  // namespace penergy::io
