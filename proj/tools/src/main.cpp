/*
 * Copyright 2026 The epsmsr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "epsmsr/errors.hpp"
#include "epsmsr_cli/commands.hpp"
#include "epsmsr_cli/storage.hpp"

namespace fs = std::filesystem;
using namespace epsmsr::cli;

int main(int argc, char** argv) {
  CLI::App app{"epsmsr: erasure-coded storage simulator with low-bandwidth node repair"};
  app.require_subcommand(1);

  GenParams gp;
  std::string gp_out = "codec.json";
  auto* gen = app.add_subcommand("gen-params", "select field and outer code, write codec metadata");
  gen->add_option("--construction", gp.construction, "base | eps-msr | multi")
      ->check(CLI::IsMember({"base", "eps-msr", "multi"}));
  gen->add_option("-n", gp.n, "number of nodes")->required();
  gen->add_option("-k", gp.k, "data nodes")->required();
  gen->add_option("-d", gp.d, "repair degree (base, eps-msr)");
  gen->add_option("-t", gp.t, "group width / outer alphabet size")->required();
  gen->add_option("--lambda", gp.lambda, "outer block length");
  gen->add_option("--delta", gp.delta_target, "outer code distance target in (0, 1]");
  gen->add_option("--assignment", gp.assignment, "base code coordinates, one per node")->delimiter(',');
  gen->add_option("-o,--out", gp_out, "metadata file");

  std::string codec_path = "codec.json", input, out_dir, dir, output;
  auto* enc = app.add_subcommand("encode", "encode a file into node shards");
  enc->add_option("--codec", codec_path, "metadata from gen-params");
  enc->add_option("-i,--input", input)->required();
  enc->add_option("-o,--out", out_dir, "shard directory")->required();

  auto* dec = app.add_subcommand("decode", "restore the file from any k shards");
  dec->add_option("--dir", dir)->required();
  dec->add_option("-o,--output", output)->required();

  std::vector<std::size_t> nodes, failed, helpers;
  auto* fail = app.add_subcommand("fail", "simulate node loss by renaming shards");
  fail->add_option("--dir", dir)->required();
  fail->add_option("--nodes", nodes)->required()->delimiter(',');

  std::string transcript;
  auto add_repair = [&](CLI::App* sub) {
    sub->add_option("--dir", dir)->required();
    sub->add_option("--failed", failed)->required()->delimiter(',');
    sub->add_option("--helpers", helpers)->required()->delimiter(',');
    sub->add_option("--transcript", transcript, "transcript path (default <dir>/transcript.json)");
  };
  auto* rep = app.add_subcommand("repair", "rebuild one node from d helpers");
  add_repair(rep);
  auto* rep_multi = app.add_subcommand("repair-multi", "rebuild h nodes from d helpers");
  add_repair(rep_multi);

  bool mds = false;
  auto* ver = app.add_subcommand("verify", "check parity of every stripe");
  ver->add_option("--dir", dir)->required();
  ver->add_flag("--mds-exhaustive", mds, "also check every r-subset of column blocks");

  std::size_t h = 1;
  std::uint64_t seed = 1;
  std::string csv_path;
  auto* bench = app.add_subcommand("bench", "sweep all failure/helper sets and emit bandwidth CSV");
  bench->add_option("--codec", codec_path);
  bench->add_option("--failures", h, "failures per repair");
  bench->add_option("--seed", seed);
  bench->add_option("-o,--out", csv_path, "CSV file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const CodecMetadata meta = generate_metadata(gp);
      save_metadata(gp_out, meta);
      describe(Codec(meta), std::cout);
    } else if (*enc) {
      cmd_encode(codec_path, input, out_dir);
    } else if (*dec) {
      cmd_decode(dir, output);
    } else if (*fail) {
      cmd_fail(dir, nodes);
    } else if (*rep || *rep_multi) {
      if (*rep && failed.size() != 1) throw epsmsr::ParameterError("repair takes one failed node; use repair-multi");
      const auto t = cmd_repair(dir, failed, helpers, transcript);
      std::cout << "rebuilt " << failed.size() << " node(s); max per-helper " << t["max_transmitted"]
                << " symbols, bound " << t["bound"] << ", bandwidth " << (t["pass"]["bandwidth"] ? "pass" : "FAIL")
                << ", help-by-transfer " << (t["pass"]["help_by_transfer"] ? "pass" : "FAIL") << "\n";
    } else if (*ver) {
      const auto report = cmd_verify(dir, mds);
      std::cout << report.dump(2) << "\n";
      return report["pass"] ? 0 : 1;
    } else if (*bench) {
      if (csv_path.empty()) {
        cmd_bench(codec_path, h, seed, std::cout);
      } else {
        std::ofstream csv(csv_path);
        if (!csv) throw IoError("cannot create " + csv_path);
        cmd_bench(codec_path, h, seed, csv);
      }
    }
  } catch (const epsmsr::CapacityError& e) {
    std::cerr << "error: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
