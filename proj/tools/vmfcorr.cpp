// SPDX-License-Identifier: Apache-2.0
//
// vmfcorr - correlation functions for channels with von Mises-Fisher scattering
// Copyright (C) 2026 The vmfcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// vmfcorr <mode> --config <path> [--out <path>] [--format csv|json] [--seed N] [--threads N]

#include <vmfcorr/cli/config.hpp>
#include <vmfcorr/cli/run.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace
{
    std::string read_file(const std::string &path)
    {
        std::ifstream f(path, std::ios::binary);
        if (!f)
            throw vmfcorr::cli::io_error("cannot read config file " + path);
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }
}

int main(int argc, char **argv)
{
    using namespace vmfcorr::cli;

    CLI::App app{"Correlation functions for channels with von Mises-Fisher scattering"};
    std::string mode_name, config_path, out_path, format;
    std::uint64_t seed = 0;
    unsigned threads = 0;

    std::vector<std::string> modes;
    for (const auto &[m, name] : mode_names())
        modes.push_back(name);

    app.add_option("mode", mode_name, "Sweep mode")->required()->check(CLI::IsMember(modes));
    app.add_option("--config", config_path, "JSON configuration file")->required();
    auto *out_opt = app.add_option("--out", out_path, "Output file (default: stdout)");
    auto *format_opt = app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    auto *seed_opt = app.add_option("--seed", seed, "Random seed for Monte-Carlo validation");
    auto *threads_opt = app.add_option("--threads", threads, "Worker threads (default: all cores)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return exit_config_error;
    }

    try
    {
        sweep_config cfg = parse_config(read_file(config_path), mode_from_string(mode_name));
        if (*out_opt)
            cfg.out = out_path;
        if (*format_opt)
            cfg.format = format == "json" ? output_format::json : output_format::csv;
        if (*seed_opt)
            cfg.seed = seed;
        if (*threads_opt)
            cfg.threads = threads;
        return run(cfg, std::cerr);
    }
    catch (const io_error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_io_error;
    }
    catch (const parse_error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config_error;
    }
    catch (const validation_error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config_error;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config_error;
    }
    catch (const std::domain_error &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config_error;
    }
    catch (const vmfcorr::tolerance_not_met &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation_failure;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
