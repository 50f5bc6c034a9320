#include "msign/matrix_file.hpp"

#include <charconv>
#include <cmath>
#include <set>

namespace msign {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

MixedEntry parse_token(std::string_view tok, std::size_t line) {
  if (tok == "+" || tok == "⊕") return Sign::Pos;
  if (tok == "-" || tok == "⊖") return Sign::Neg;
  if (tok == "0") return Sign::Zero;
  if (tok == "?" || tok == "⊙") return Sign::Indef;
  std::string_view digits = tok;
  if (digits.size() > 1 && digits.front() == '+' && digits[1] != '-' && digits[1] != '+')
    digits.remove_prefix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), x);
  if (ec != std::errc() || ptr != digits.data() + digits.size())
    throw ParseError(line, "unknown token '" + std::string(tok) + "'");
  if (!std::isfinite(x)) throw ParseError(line, "non-finite value '" + std::string(tok) + "'");
  return x;
}

}  // namespace

std::vector<NamedMatrix> parse_matrix_file(std::string_view text) {
  std::vector<NamedMatrix> out;
  std::set<std::string> names;
  std::vector<std::vector<MixedEntry>> rows;
  bool open = false;

  auto close = [&] {
    if (!open) return;
    if (rows.empty()) throw ParseError(out.back().line, "block '" + out.back().name + "' is empty");
    out.back().value = MixedMatrix::from_rows(rows);
    rows.clear();
    open = false;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) {
      close();
      continue;
    }
    if (line.front() == '#') continue;
    if (line.front() == '@') {
      close();
      const std::string name(trim(line.substr(1)));
      if (name.empty() || split(name).size() != 1)
        throw ParseError(line_no, "invalid block name '" + name + "'");
      if (!names.insert(name).second) throw ParseError(line_no, "duplicate block name '" + name + "'");
      out.push_back({name, {}, line_no});
      open = true;
      continue;
    }
    if (!open) throw ParseError(line_no, "row outside of a block");
    std::vector<MixedEntry> row;
    for (auto tok : split(line)) row.push_back(parse_token(tok, line_no));
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError(line_no, "ragged row: expected " + std::to_string(rows.front().size()) +
                                    " entries, found " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  close();
  return out;
}

std::string format_entry(const MixedEntry& e) {
  if (const Sign* s = std::get_if<Sign>(&e)) return std::string(1, to_char(*s));
  const double x = std::get<double>(e);
  if (x == 0.0) return std::signbit(x) ? "-0" : "0.0";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string format_matrix_file(const std::vector<NamedMatrix>& blocks) {
  std::string out;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b) out += '\n';
    out += '@' + blocks[b].name + '\n';
    const MixedMatrix& m = blocks[b].value;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j) out += ' ';
        out += format_entry(m(i, j));
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace msign
