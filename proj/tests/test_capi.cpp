#include "doctest.h"

#include <cstring>
#include <filesystem>
#include <string>

#include "nsf/nsf.h"

TEST_CASE("capi: default scenario, set and validate")
{
    nsf_scenario* s = nullptr;
    REQUIRE(nsf_scenario_default(&s) == NSF_OK);
    CHECK(nsf_scenario_set(s, "thermo.gamma", "1.4") == NSF_OK);
    CHECK(nsf_scenario_validate(s) == NSF_OK);
    CHECK(nsf_scenario_set(s, "thermo.gamma", "0.5") == NSF_OK);
    CHECK(nsf_scenario_validate(s) == NSF_ERR_VALIDATION);
    CHECK(std::string(nsf_last_error()).find("thermo.gamma") != std::string::npos);
    CHECK(nsf_scenario_override(s, "thermo.nothing=1") == NSF_ERR_VALIDATION);
    nsf_scenario_free(s);
}

TEST_CASE("capi: null arguments")
{
    CHECK(nsf_scenario_default(nullptr) == NSF_ERR_ARGUMENT);
    CHECK(nsf_run(nullptr, nullptr) == NSF_ERR_ARGUMENT);
    CHECK(nsf_result_record_count(nullptr) == 0);
    nsf_scenario_free(nullptr);
    nsf_result_free(nullptr);
}

TEST_CASE("capi: load errors")
{
    nsf_scenario* s = nullptr;
    CHECK(nsf_scenario_load("/nonexistent/file.ini", &s) == NSF_ERR_IO);
    CHECK(nsf_scenario_parse("[thermo]\nfoo = 1\n", &s) == NSF_ERR_VALIDATION);
    CHECK(std::string(nsf_last_error()).find("thermo.foo") != std::string::npos);
}

TEST_CASE("capi: short run and result access")
{
    nsf_scenario* s = nullptr;
    const std::string dir = (std::filesystem::temp_directory_path() / "nsf_test_capi").string();
    REQUIRE(nsf_scenario_parse("[halfline_solver]\nT_final = 1\nL = 300\nN = 601\nperturbation_width = 10\n"
                               "[shift_weight]\nbeta = 100\n",
                               &s) == NSF_OK);
    REQUIRE(nsf_scenario_set(s, "scenario_cli.output_dir", dir.c_str()) == NSF_OK);
    nsf_result* r = nullptr;
    REQUIRE(nsf_run(s, &r) == NSF_OK);
    const size_t n = nsf_result_record_count(r);
    CHECK(n > 2);
    nsf_record rec{};
    CHECK(nsf_result_record(r, 0, &rec) == NSF_OK);
    CHECK(rec.t == 0.0);
    CHECK(rec.sup_err > 0.0);
    CHECK(nsf_result_record(r, n, &rec) == NSF_ERR_ARGUMENT);

    double v = 0.0;
    CHECK(nsf_result_summary_value(r, "T_final", &v) == NSF_OK);
    CHECK(v == 1.0);
    CHECK(nsf_result_summary_value(r, "boundary", &v) == NSF_ERR_ARGUMENT);

    char* text = nullptr;
    REQUIRE(nsf_result_summary_json(r, &text) == NSF_OK);
    CHECK(std::strstr(text, "\"sup_err_final\"") != nullptr);
    nsf_string_free(text);
    REQUIRE(nsf_result_dissipation_json(r, &text) == NSF_OK);
    CHECK(std::strstr(text, "\"pass_fraction\"") != nullptr);
    nsf_string_free(text);

    nsf_result_free(r);
    nsf_scenario_free(s);
}

TEST_CASE("capi: off-curve boundary data is a validation failure")
{
    nsf_scenario* s = nullptr;
    REQUIRE(nsf_scenario_parse("[hugoniot]\nu_minus = -1.1\ntheta_minus = 1.3\n", &s) == NSF_OK);
    nsf_result* r = nullptr;
    const nsf_status st = nsf_run(s, &r);
    CHECK(st == NSF_ERR_VALIDATION);
    CHECK(std::string(nsf_last_error()).find("not on") != std::string::npos);
    CHECK(r == nullptr);
    nsf_scenario_free(s);
}

TEST_CASE("capi: empty sweep and poincare report")
{
    nsf_scenario* s = nullptr;
    REQUIRE(nsf_scenario_parse("[scenario_cli]\npoincare_samples = 10\nwrite_outputs = false\n", &s) == NSF_OK);
    char* text = nullptr;
    REQUIRE(nsf_sweep(s, &text) == NSF_OK);
    CHECK(std::strstr(text, "\"points\": []") != nullptr);
    nsf_string_free(text);
    int ok = 0;
    REQUIRE(nsf_check_poincare(s, &text, &ok) == NSF_OK);
    CHECK(ok == 1);
    nsf_string_free(text);
    nsf_scenario_free(s);
}
