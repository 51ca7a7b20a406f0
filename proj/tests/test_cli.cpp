// End-to-end runs of the command-line tool.

#include "spiderweb/graph_io.hpp"

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
protected:
    fs::path dir;

    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir = fs::temp_directory_path() / (std::string("spiderweb_cli_") + info->name() + "_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    std::string path(const std::string& name) const { return (dir / name).string(); }

    int run(const std::string& args) const {
        const std::string cmd = std::string(SPIDERWEB_CLI) + " --outdir " + dir.string() + " " + args + " >" +
                                path("stdout.txt") + " 2>" + path("stderr.txt");
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
};

}  // namespace

TEST_F(Cli, GenerateThenValidate) {
    ASSERT_EQ(run("generate --family dyadic_web --depth 4 --out " + path("g.txt")), 0);
    EXPECT_EQ(spiderweb::read_graph_file(path("g.txt")).vertex_count(), 31u);
    EXPECT_EQ(run("validate --in " + path("g.txt")), 0);
    EXPECT_TRUE(fs::exists(path("generate.manifest")));
    EXPECT_TRUE(fs::exists(path("validate.manifest")));
}

TEST_F(Cli, ValidateReportsViolationsWithExitThree) {
    std::ofstream(path("bad.txt")) << "spiderweb v1 5\nv 1 0\nv 2 0\nv 3 1\nv 4 2\nh 3 4\n";
    EXPECT_EQ(run("validate --in " + path("bad.txt") + " --out " + path("v.csv")), 3);
    const std::string csv = slurp(path("v.csv"));
    EXPECT_NE(csv.find("predecessor_adjacency,3,4,2,1"), std::string::npos) << csv;
}

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run("nosuchcommand"), 1);
    EXPECT_EQ(run("generate --depth notanumber"), 1);
    EXPECT_EQ(run("generate --family bogus --depth 3"), 1);
    EXPECT_EQ(run("validate --in " + path("missing.txt")), 2);
    std::ofstream(path("broken.txt")) << "spiderweb v1 3\nv 1 0\n";
    EXPECT_EQ(run("validate --in " + path("broken.txt")), 2);
    ASSERT_EQ(run("generate --family homogeneous_tree --q 2 --depth 4 --out " + path("t.txt")), 0);
    EXPECT_EQ(run("weaktype --in " + path("t.txt") + " --function const:0"), 2);
    EXPECT_NE(slurp(path("stderr.txt")).find("zero function"), std::string::npos);
    EXPECT_EQ(run("maximal --in " + path("t.txt") + " --function ball:1"), 2);
    EXPECT_EQ(run("discretize --theta 5 --radius 2"), 1);
}

TEST_F(Cli, DeltaAndGeodesicCsv) {
    ASSERT_EQ(run("generate --family dyadic_web --depth 3 --out " + path("g.txt")), 0);
    ASSERT_EQ(run("delta --in " + path("g.txt") + " --out " + path("d.csv")), 0);
    const std::string d = slurp(path("d.csv"));
    EXPECT_EQ(d.rfind("mode,delta,x,y,z,w,quadruples,landmarks\nexhaustive,2,", 0), 0u) << d;
    ASSERT_EQ(run("geodesic --in " + path("g.txt") + " --pairs 50 --out " + path("geo.csv")), 0);
    const std::string geo = slurp(path("geo.csv"));
    EXPECT_EQ(geo.rfind("x,y,len,asc,horiz,desc,bound_ok\n", 0), 0u);
    EXPECT_EQ(std::count(geo.begin(), geo.end(), '\n'), 51);
    EXPECT_EQ(geo.find("false"), std::string::npos);
}

TEST_F(Cli, MaximalWeakTypeAndPairCount) {
    ASSERT_EQ(run("generate --family homogeneous_tree --q 2 --depth 5 --out " + path("t.txt")), 0);
    ASSERT_EQ(run("maximal --in " + path("t.txt") + " --function point:0 --rmax 3 --out " + path("m.csv")), 0);
    const std::string m = slurp(path("m.csv"));
    EXPECT_EQ(m.rfind("vertex,level,f,M0,Minf,M,frontier\n0,0,1,1,0.33333333333333331,1,false\n", 0), 0u) << m;
    ASSERT_EQ(run("weaktype --in " + path("t.txt") + " --family point_mass --mode interior --out " + path("w.csv")), 0);
    const std::string w = slurp(path("w.csv"));
    EXPECT_EQ(std::count(w.begin(), w.end(), '\n'), 7);
    ASSERT_EQ(run("paircount --in " + path("t.txt") + " --sizes 5 --trials 2 --rmax 4 --out " + path("p.csv")), 0);
    const std::string p = slurp(path("p.csv"));
    EXPECT_EQ(p.rfind("trial,E_size,F_size,r,U_r,G_r,ratio,shell_ratio\n", 0), 0u);
    EXPECT_EQ(std::count(p.begin(), p.end(), '\n'), 11);
}

TEST_F(Cli, ConfigFileAndManifestRoundTrip) {
    std::ofstream(path("run.cfg")) << "# generator settings\nfamily = random_spiderweb\ndepth=5\ndensity=0.5\nseed=9\n";
    ASSERT_EQ(run("--config " + path("run.cfg") + " generate --out " + path("a.txt")), 0);
    const std::string manifest = slurp(path("generate.manifest"));
    EXPECT_NE(manifest.find("family=random_spiderweb"), std::string::npos) << manifest;
    EXPECT_NE(manifest.find("seed=9"), std::string::npos);
    EXPECT_NE(manifest.find("density=0.5"), std::string::npos);

    // Flags override the file.
    ASSERT_EQ(run("--config " + path("run.cfg") + " generate --depth 3 --out " + path("b.txt")), 0);
    EXPECT_EQ(spiderweb::read_graph_file(path("b.txt")).tree().depth(), 3u);

    // Rerunning from the manifest of the first run reproduces its output.
    fs::copy_file(path("generate.manifest"), path("replay.cfg"));
    ASSERT_EQ(run("--config " + path("run.cfg") + " generate --out " + path("a.txt")), 0);
    fs::copy_file(path("generate.manifest"), path("replay.cfg"), fs::copy_options::overwrite_existing);
    ASSERT_EQ(run("--config " + path("replay.cfg") + " generate --out " + path("c.txt")), 0);
    EXPECT_EQ(slurp(path("a.txt")), slurp(path("c.txt")));
}

TEST_F(Cli, DiscretizeTreeSpace) {
    ASSERT_EQ(run("generate --family homogeneous_tree --q 2 --depth 5 --out " + path("t.txt")), 0);
    ASSERT_EQ(run("discretize --space tree:" + path("t.txt") + " --radius 5 --theta 0.5 --allow-small-theta --oversample 1 "
                  "--margin 0 --out " + path("w.txt") + " --report " + path("r.csv") + " --points " + path("pts.csv")),
              0)
        << slurp(path("stderr.txt"));
    const std::string report = slurp(path("r.csv"));
    EXPECT_EQ(report.rfind("metric,level,value\n", 0), 0u);
    EXPECT_NE(report.find("beta_obs,all,0\n"), std::string::npos) << report;
    EXPECT_NE(report.find("validator_violations,all,0\n"), std::string::npos);
    EXPECT_EQ(spiderweb::read_graph_file(path("w.txt")).vertex_count(), 63u);
}

TEST_F(Cli, AcceptOnlyOneCriterion) {
    EXPECT_EQ(run("accept --only 1"), 0);
    const std::string out = slurp(path("stdout.txt"));
    EXPECT_EQ(out.rfind("PASS  [ 1]", 0), 0u) << out;
}
