#include "kanon/csv.hpp"

#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <vector>

#include "kanon/error.hpp"

namespace kanon {
namespace {

void validate_options(const CsvOptions& options) {
  if (options.delimiter == '"' || options.delimiter == '\n' ||
      options.delimiter == '\r') {
    fail(ErrorCode::invalid_param,
         "delimiter may not be a quote or a line break");
  }
  for (char c : options.marker) {
    if (c == options.delimiter || c == '"' || c == '\n' || c == '\r') {
      fail(ErrorCode::invalid_param,
           "suppressed marker may not contain the delimiter, quotes, or "
           "line breaks");
    }
  }
}

struct ParsedField {
  std::string text;
  bool quoted = false;
};

struct ParsedRecord {
  std::vector<ParsedField> fields;
  std::size_t line = 1;  // 1-based line the record starts on
};

std::vector<ParsedRecord> parse_records(const std::string& text,
                                        char delimiter) {
  enum class State { field_start, unquoted, quoted, quote_end };

  std::vector<ParsedRecord> records;
  std::vector<ParsedField> fields;
  std::string buf;
  State state = State::field_start;
  std::size_t line = 1;
  std::size_t record_line = 1;
  std::size_t quote_line = 1;

  auto push_field = [&](bool quoted) {
    fields.push_back({std::move(buf), quoted});
    buf.clear();
  };
  auto emit_record = [&] {
    records.push_back({std::move(fields), record_line});
    fields.clear();
    state = State::field_start;
  };

  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    switch (state) {
      case State::field_start:
        if (c == '"') {
          state = State::quoted;
          quote_line = line;
          ++i;
        } else if (c == delimiter) {
          push_field(false);
          ++i;
        } else if (c == '\n' || (c == '\r' && i + 1 < n && text[i + 1] == '\n')) {
          push_field(false);
          i += c == '\r' ? 2 : 1;
          ++line;
          emit_record();
          record_line = line;
        } else {
          state = State::unquoted;
          buf.push_back(c);
          ++i;
        }
        break;
      case State::unquoted:
        if (c == '"') {
          fail(ErrorCode::parse_error,
               "quote character inside an unquoted field at line " +
                   std::to_string(line));
        } else if (c == delimiter) {
          push_field(false);
          state = State::field_start;
          ++i;
        } else if (c == '\n' || (c == '\r' && i + 1 < n && text[i + 1] == '\n')) {
          push_field(false);
          i += c == '\r' ? 2 : 1;
          ++line;
          emit_record();
          record_line = line;
        } else {
          buf.push_back(c);
          ++i;
        }
        break;
      case State::quoted:
        if (c == '"') {
          if (i + 1 < n && text[i + 1] == '"') {
            buf.push_back('"');
            i += 2;
          } else {
            push_field(true);
            state = State::quote_end;
            ++i;
          }
        } else {
          if (c == '\n') ++line;
          buf.push_back(c);
          ++i;
        }
        break;
      case State::quote_end:
        if (c == delimiter) {
          state = State::field_start;
          ++i;
        } else if (c == '\n' || (c == '\r' && i + 1 < n && text[i + 1] == '\n')) {
          i += c == '\r' ? 2 : 1;
          ++line;
          emit_record();
          record_line = line;
        } else {
          fail(ErrorCode::parse_error,
               "unexpected character after a closing quote at line " +
                   std::to_string(line));
        }
        break;
    }
  }
  switch (state) {
    case State::quoted:
      fail(ErrorCode::parse_error,
           "unterminated quoted field starting at line " +
               std::to_string(quote_line));
    case State::quote_end:
      emit_record();
      break;
    case State::unquoted:
      push_field(false);
      emit_record();
      break;
    case State::field_start:
      if (!fields.empty()) {
        push_field(false);
        emit_record();
      }
      break;
  }
  return records;
}

void write_value(std::ostream& out, const std::string& value,
                 const CsvOptions& options) {
  const bool needs_quotes =
      value.empty() || value == options.marker ||
      value.find_first_of(std::string{options.delimiter} + "\"\r\n") !=
          std::string::npos;
  if (!needs_quotes) {
    out << value;
    return;
  }
  out << '"';
  for (char c : value) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

}  // namespace

Dataset read_table_csv(std::istream& in, const CsvOptions& options) {
  validate_options(options);
  std::string text{std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>()};
  if (in.bad()) fail(ErrorCode::io_error, "read failed");

  const std::vector<ParsedRecord> records =
      parse_records(text, options.delimiter);
  if (records.empty()) {
    fail(ErrorCode::parse_error, "empty input: missing header row");
  }

  std::vector<std::string> schema;
  schema.reserve(records[0].fields.size());
  for (const auto& field : records[0].fields) schema.push_back(field.text);

  std::vector<Row> rows;
  rows.reserve(records.size() - 1);
  for (std::size_t i = 1; i < records.size(); ++i) {
    const ParsedRecord& record = records[i];
    if (record.fields.size() != schema.size()) {
      fail(ErrorCode::ragged_row,
           "row starting at line " + std::to_string(record.line) + " has " +
               std::to_string(record.fields.size()) + " fields, expected " +
               std::to_string(schema.size()));
    }
    Row row;
    row.reserve(record.fields.size());
    for (const auto& field : record.fields) {
      if (!field.quoted && field.text == options.marker) {
        row.push_back(kSuppressed);
      } else {
        row.push_back(field.text);
      }
    }
    rows.push_back(std::move(row));
  }
  return Dataset(std::move(schema), std::move(rows));
}

Dataset read_table_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::io_error, "cannot open '" + path + "' for reading");
  }
  try {
    return read_table_csv(in, options);
  } catch (const Error& e) {
    fail(e.code(), "'" + path + "': " + e.message());
  }
}

void write_table_csv(const Dataset& d, std::ostream& out,
                     const CsvOptions& options) {
  validate_options(options);
  for (std::size_t c = 0; c < d.column_count(); ++c) {
    if (c > 0) out << options.delimiter;
    write_value(out, d.schema()[c], options);
  }
  out << '\n';
  for (const auto& row : d.rows()) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << options.delimiter;
      if (row[c].has_value()) {
        write_value(out, *row[c], options);
      } else {
        out << options.marker;
      }
    }
    out << '\n';
  }
  if (!out) fail(ErrorCode::io_error, "write failed");
}

void write_table_csv(const Dataset& d, const std::string& path,
                     const CsvOptions& options) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    fail(ErrorCode::io_error, "cannot open '" + path + "' for writing");
  }
  try {
    write_table_csv(d, out, options);
  } catch (const Error& e) {
    fail(e.code(), "'" + path + "': " + e.message());
  }
  out.flush();
  if (!out) fail(ErrorCode::io_error, "cannot write '" + path + "'");
}

}  // namespace kanon
