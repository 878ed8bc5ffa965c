// Copyright 2026 The privstat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings for the main estimation operations. The surface is
// deliberately small: calibrate noise, run the two estimators, run the
// tracing check, and poke the deterministic RNG. Datasets cross the
// boundary as plain lists; the volumes here never justify buffer protocol
// plumbing.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "privstat/attack.hpp"
#include "privstat/cdf.hpp"
#include "privstat/distributions.hpp"
#include "privstat/harness.hpp"
#include "privstat/mean.hpp"
#include "privstat/privacy.hpp"
#include "privstat/random.hpp"

namespace py = pybind11;

namespace {

privstat::MeanDataset MeanDatasetFromRows(
    const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) {
    throw std::invalid_argument("dataset: no rows");
  }
  privstat::MeanDataset data;
  data.d = rows[0].size();
  data.entries.reserve(rows.size() * data.d);
  for (const auto& row : rows) {
    if (row.size() != data.d) {
      throw std::invalid_argument("dataset: ragged rows");
    }
    for (int v : row) {
      if (v != 1 && v != -1) {
        throw std::invalid_argument("dataset: entries must be +1 or -1");
      }
      data.entries.push_back(static_cast<std::int8_t>(v));
    }
  }
  return data;
}

privstat::DiscreteDataset DiscreteDatasetFromValues(
    const std::vector<std::uint32_t>& values, std::size_t domain_size) {
  privstat::DiscreteDataset data;
  data.domain_size = domain_size;
  data.values = values;
  return data;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Differentially private mean and CDF estimation";

  py::class_<privstat::RandomSource>(m, "RandomSource")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_static("from_stream_key", &privstat::RandomSource::from_stream_key,
                  py::arg("key"))
      .def("next_u64", &privstat::RandomSource::next_u64)
      .def("uniform01", &privstat::RandomSource::uniform01)
      .def("normal", &privstat::RandomSource::normal)
      .def("substream",
           static_cast<privstat::RandomSource (privstat::RandomSource::*)(
               std::uint64_t) const>(&privstat::RandomSource::substream),
           py::arg("id"))
      .def("stream_key", &privstat::RandomSource::stream_key);

  m.def("gaussian_noise_scale",
        [](double l2_sensitivity, double epsilon, double delta) {
          return privstat::gaussian_noise_scale(
              privstat::Sensitivity(l2_sensitivity),
              privstat::PrivacyParams(epsilon, delta));
        },
        py::arg("l2_sensitivity"), py::arg("epsilon"), py::arg("delta"));

  m.def("mean_sensitivity",
        [](std::size_t d, std::size_t n) {
          return privstat::mean_sensitivity(d, n).l2();
        },
        py::arg("d"), py::arg("n"));

  m.def("private_mean",
        [](const std::vector<std::vector<int>>& rows, double epsilon, double delta,
           std::uint64_t seed, bool clamp) {
          privstat::MeanDataset data = MeanDatasetFromRows(rows);
          privstat::RandomSource rng(seed);
          privstat::PrivateMeanOptions options;
          options.clamp = clamp;
          return privstat::private_mean(
              data, privstat::PrivacyParams(epsilon, delta), rng, options);
        },
        py::arg("rows"), py::arg("epsilon"), py::arg("delta"), py::arg("seed"),
        py::arg("clamp") = true);

  m.def("empirical_mean",
        [](const std::vector<std::vector<int>>& rows) {
          return privstat::empirical_mean(MeanDatasetFromRows(rows));
        },
        py::arg("rows"));

  m.def("empirical_cdf",
        [](const std::vector<std::uint32_t>& values, std::size_t domain_size) {
          return privstat::empirical_cdf(
              DiscreteDatasetFromValues(values, domain_size));
        },
        py::arg("values"), py::arg("domain_size"));

  m.def("private_cdf",
        [](const std::vector<std::uint32_t>& values, std::size_t domain_size,
           double epsilon, double delta, std::uint64_t seed) {
          privstat::RandomSource rng(seed);
          return privstat::private_cdf(
              DiscreteDatasetFromValues(values, domain_size),
              privstat::PrivacyParams(epsilon, delta), rng);
        },
        py::arg("values"), py::arg("domain_size"), py::arg("epsilon"),
        py::arg("delta"), py::arg("seed"));

  m.def("dyadic_decompose",
        [](std::size_t j, std::size_t domain_size) {
          std::vector<std::pair<std::size_t, std::size_t>> out;
          for (const auto& part : privstat::dyadic_decompose(j, domain_size)) {
            out.emplace_back(part.level, part.index);
          }
          return out;
        },
        py::arg("j"), py::arg("domain_size"));

  m.def("fingerprinting_check",
        [](std::size_t n, std::size_t trials, std::uint64_t seed) {
          privstat::RandomSource rng(seed);
          py::list out;
          for (const auto& entry : privstat::fingerprinting_check(n, trials, rng)) {
            py::dict d;
            d["label"] = entry.label;
            d["lhs"] = entry.lhs_estimate;
            d["mse"] = entry.mse_estimate;
            d["slack"] = entry.slack;
            d["bound_satisfied"] = entry.bound_satisfied;
            out.append(d);
          }
          return out;
        },
        py::arg("n"), py::arg("trials"), py::arg("seed"));

  m.attr("__version__") = "0.1.0";
}
