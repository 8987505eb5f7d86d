#pragma once

#include <iosfwd>
#include <string>

#include "kanon/dataset.hpp"

namespace kanon {

/// CSV profile. `marker` is the on-disk spelling of a suppressed cell: an
/// unquoted data field equal to it loads as suppressed, and the writer
/// emits suppressed cells as the bare marker. A literal value equal to the
/// marker (or an empty string) is written quoted, and quoted fields always
/// load literally, so write-then-read is the identity for every dataset.
/// Header fields are attribute names and are never marker-mapped.
struct CsvOptions {
  char delimiter = ',';
  std::string marker = "*";
};

/// Reads a table whose first record is the header. Standard quoting: fields
/// may be wrapped in double quotes, "" escapes a quote, quoted fields may
/// span lines; rows end at LF or CRLF.
Dataset read_table_csv(std::istream& in, const CsvOptions& options = {});
Dataset read_table_csv(const std::string& path, const CsvOptions& options = {});

void write_table_csv(const Dataset& d, std::ostream& out,
                     const CsvOptions& options = {});
void write_table_csv(const Dataset& d, const std::string& path,
                     const CsvOptions& options = {});

}  // namespace kanon
