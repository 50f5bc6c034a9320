#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "msign/cli.hpp"
#include "msign/errors.hpp"
#include "msign/kernel.hpp"
#include "msign/matrix_file.hpp"
#include "msign/numeric.hpp"
#include "msign/signstab.hpp"

namespace py = pybind11;
using namespace msign;

namespace {

std::string join_rows(const std::vector<std::string>& rows) {
  std::string text = "@M\n";
  for (const auto& r : rows) text += r + "\n";
  return text;
}

QualMatrix pattern_from(const std::vector<std::string>& rows) {
  const auto blocks = parse_matrix_file(join_rows(rows));
  return to_qual(blocks.at(0).value);
}

RealMatrix real_from(const std::vector<std::vector<double>>& rows) {
  const std::size_t c = rows.empty() ? 0 : rows[0].size();
  RealMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw DomainError("ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::string> pattern_rows(const QualMatrix& a) {
  std::vector<std::string> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += (j ? " " : "") + format_entry(a(i, j));
  return out;
}

std::vector<std::vector<double>> nested(const RealMatrix& m) {
  std::vector<std::vector<double>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i].assign(m.row(i).begin(), m.row(i).end());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sign stability of Metzler patterns";
  m.attr("__version__") = MSIGN_VERSION;

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command line tool in-process; returns (exit_code, stdout, stderr).");

  m.def(
      "sign_stable",
      [](const std::vector<std::string>& rows, bool full_check) {
        const auto v = sign_stable(pattern_from(rows), {.full_check = full_check});
        py::dict d;
        d["verdict"] = v.verdict;
        d["cycle"] = v.cycle ? py::cast(*v.cycle) : py::none();
        d["permutation"] = v.permutation ? py::cast(*v.permutation) : py::none();
        d["bad_diagonal"] = v.bad_diagonal ? py::cast(*v.bad_diagonal) : py::none();
        return d;
      },
      py::arg("rows"), py::arg("full_check") = false);

  m.def("sign_inverse", [](const std::vector<std::string>& rows) {
    return pattern_rows(sign_inverse(pattern_from(rows)));
  });

  m.def(
      "sample",
      [](const std::vector<std::string>& rows, std::uint64_t seed, double scale) {
        return nested(sample_qual(pattern_from(rows), seed, scale));
      },
      py::arg("rows"), py::arg("seed") = 0, py::arg("scale") = 1.0);

  m.def("spectral_abscissa", [](const std::vector<std::vector<double>>& rows) {
    return spectral_abscissa_metzler(real_from(rows));
  });
}
