// Copyright 2026 The swapsim Authors
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

#include "swapsim/config.h"

#include <gtest/gtest.h>

using namespace swapsim;

TEST(config, stated_values_and_defaults) {
    auto c = parse_config("phi_a = 0\nphi_d = 22.5\noverlap = 1.0\n");
    EXPECT_EQ(c.experiment.phi_a, 0);
    EXPECT_EQ(c.experiment.phi_d, 22.5);
    EXPECT_EQ(c.experiment.overlap, 1.0);
    EXPECT_EQ(c.experiment.efficiency, 1.0);
    EXPECT_EQ(c.settings, "chsh");
}

TEST(config, empty_file_is_ideal) {
    auto c = parse_config("");
    EXPECT_EQ(c.experiment.overlap, 1);
    EXPECT_EQ(c.experiment.efficiency, 1);
    EXPECT_EQ(c.experiment.misalignment_deg, 0);
    EXPECT_EQ(c.experiment.seed, 0u);
    EXPECT_EQ(c.experiment.events, 10000);
    EXPECT_EQ(c.setting_list().size(), 4u);
    EXPECT_EQ(parse_config("# only a comment\n\n   \n").echo(), c.echo());
}

TEST(config, errors_name_line_and_key) {
    try {
        parse_config("phi_a = 3\noverlap = 1.5\n");
        FAIL() << "expected a range error";
    } catch (const ConfigError &e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
        EXPECT_NE(msg.find("overlap"), std::string::npos) << msg;
    }
    EXPECT_THROW(parse_config("colour = red\n"), ConfigError);
    EXPECT_THROW(parse_config("phi_a = ten\n"), ConfigError);
    EXPECT_THROW(parse_config("phi_a 10\n"), ConfigError);
    EXPECT_THROW(parse_config("efficiency = 0\n"), ConfigError);
    EXPECT_THROW(parse_config("settings = diagonal\n"), ConfigError);
    EXPECT_THROW(parse_config("placement = 4\n"), ConfigError);
    EXPECT_THROW(parse_config("chsh_angles = 0, 22.5, 45\n"), ConfigError);
}

TEST(config, delay_resolves_overlap) {
    auto c = parse_config("delay = 0\n");
    EXPECT_DOUBLE_EQ(c.experiment.overlap, 1);
    auto far = parse_config("sigma = 50\ndelay = 100\n");
    EXPECT_LT(far.experiment.overlap, 1);
    EXPECT_GT(far.experiment.overlap, 0);
    EXPECT_THROW(parse_config("delay = 10\noverlap = 0.5\n"), ConfigError);
}

TEST(config, duration_and_rate_resolve_events) {
    auto c = parse_config("duration = 10000\nrate = 0.0325\n");
    EXPECT_EQ(c.experiment.events, 325);
    EXPECT_THROW(parse_config("duration = 100\n"), ConfigError);
    EXPECT_THROW(parse_config("duration = 100\nrate = 2\nevents = 5\n"), ConfigError);
}

TEST(config, delays_list_and_range) {
    EXPECT_EQ(parse_config("delays = -10, 0, 10\n").delays, (std::vector<double>{-10, 0, 10}));
    EXPECT_EQ(parse_config("delays = -10:10:5\n").delays, (std::vector<double>{-10, -5, 0, 5, 10}));
    EXPECT_EQ(parse_config("").delays.size(), 25u);
}

TEST(config, echo_round_trips) {
    auto c = parse_config(
        "phi_a = 12.345678901234\nphi_d = -7\noverlap = 0.954\nefficiency = 0.3\nmisalignment = 4.5\n"
        "seed = 99\nevents = 1234\nsettings = single\nplacement = 2\nmode = sample\n"
        "chsh_angles = 1, 2, 3, 4\ndelays = 0.1, 0.2\nsigma = 80\n");
    auto again = parse_config(c.echo());
    EXPECT_EQ(again.echo(), c.echo());
    EXPECT_EQ(again.experiment.phi_a, c.experiment.phi_a);
    EXPECT_EQ(again.experiment.overlap, c.experiment.overlap);
    EXPECT_EQ(again.experiment.seed, 99u);
    EXPECT_EQ(again.delays, c.delays);
    EXPECT_EQ(again.placement, "2");
    EXPECT_EQ(again.setting_list().size(), 1u);
}

TEST(config, every_key_is_echoed_or_derived) {
    auto echo = parse_config("").echo();
    for (const auto &key : {"phi_a", "phi_d", "overlap", "efficiency", "misalignment", "seed", "events", "settings",
                            "chsh_angles", "placement", "mode", "delays", "sigma"}) {
        EXPECT_NE(echo.find(std::string(key) + " = "), std::string::npos) << key;
    }
}
