#include "hierclass/dataio.hpp"

#include <cmath>

#include "doctest.h"

#include "hierclass/errors.hpp"
#include "hierclass/metrics.hpp"
#include "hierclass/rng.hpp"
#include "test_support.hpp"

using namespace hierclass;
using testsupport::TempDir;

namespace {

DatasetSchema mock_schema() {
    DatasetSchema s;
    s.feature_columns = {"f1", "f2"};
    s.label_columns = {"l1", "l2", "l3"};
    return s;
}

}  // namespace

TEST_CASE("load_csv parses the mock dataset exactly") {
    TempDir dir("csv");
    testsupport::write_text(dir.file("mock.csv"), testsupport::mock_csv());

    const auto [X, Y] = load_csv(dir.file("mock.csv"), mock_schema());
    CHECK(X == testsupport::mock_features());
    CHECK(Y == testsupport::mock_labels());
}

TEST_CASE("feature columns default to everything that is not a label") {
    TempDir dir("csv-default");
    testsupport::write_text(dir.file("mock.csv"), testsupport::mock_csv());
    DatasetSchema s;
    s.label_columns = {"l1", "l2", "l3"};
    const auto [X, Y] = load_csv(dir.file("mock.csv"), s);
    CHECK(X == testsupport::mock_features());
}

TEST_CASE("header-only file loads as zero samples") {
    TempDir dir("csv-empty");
    testsupport::write_text(dir.file("empty.csv"), "f1,f2,l1,l2,l3\n");
    const auto [X, Y] = load_csv(dir.file("empty.csv"), mock_schema());
    CHECK(X.rows() == 0);
    CHECK(Y.n_samples() == 0);
    CHECK(Y.n_levels() == 3);
}

TEST_CASE("headerless files use column indices") {
    TempDir dir("csv-noheader");
    testsupport::write_text(dir.file("data.csv"), "1;2;A\n3;4;B\n");
    DatasetSchema s;
    s.feature_columns = {"0", "1"};
    s.label_columns = {"2"};
    s.delimiter = ';';
    s.has_header = false;
    const auto [X, Y] = load_csv(dir.file("data.csv"), s);
    CHECK(X.rows() == 2);
    CHECK(X.at(1, 0) == 3.0);
    CHECK(Y.row(1) == std::vector<std::string>{"B"});

    // A name reference is rejected when there is no header to resolve it.
    s.label_columns = {"label"};
    CHECK_THROWS_AS(load_csv(dir.file("data.csv"), s), MissingColumn);
}

TEST_CASE("load_csv error paths") {
    TempDir dir("csv-errors");

    SUBCASE("missing label after empty cell") {
        testsupport::write_text(dir.file("bad.csv"), "f1,f2,l1,l2,l3\n5.0,6.0,A,,C\n");
        CHECK_THROWS_AS(load_csv(dir.file("bad.csv"), mock_schema()),
                        MalformedLabelMatrix);
    }
    SUBCASE("missing column") {
        testsupport::write_text(dir.file("cols.csv"), "f1,f2,l1,l2\n1,2,A,B\n");
        CHECK_THROWS_AS(load_csv(dir.file("cols.csv"), mock_schema()), MissingColumn);
    }
    SUBCASE("non-numeric feature") {
        testsupport::write_text(dir.file("feat.csv"), "f1,f2,l1,l2,l3\nx,2,A,B,C\n");
        CHECK_THROWS_AS(load_csv(dir.file("feat.csv"), mock_schema()), ParseError);
    }
    SUBCASE("non-finite feature") {
        testsupport::write_text(dir.file("inf.csv"), "f1,f2,l1,l2,l3\ninf,2,A,B,C\n");
        CHECK_THROWS_AS(load_csv(dir.file("inf.csv"), mock_schema()), ParseError);
    }
    SUBCASE("ragged row") {
        testsupport::write_text(dir.file("ragged.csv"), "f1,f2,l1,l2,l3\n1,2,A,B\n");
        CHECK_THROWS_AS(load_csv(dir.file("ragged.csv"), mock_schema()), ParseError);
    }
    SUBCASE("label column listed as feature") {
        DatasetSchema s = mock_schema();
        s.feature_columns = {"f1", "l1"};
        testsupport::write_text(dir.file("m.csv"), testsupport::mock_csv());
        CHECK_THROWS_AS(load_csv(dir.file("m.csv"), s), InvalidSchema);
    }
    SUBCASE("no label columns at all") {
        DatasetSchema s;
        CHECK_THROWS_AS(load_csv(dir.file("whatever.csv"), s), InvalidSchema);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_csv(dir.file("nope.csv"), mock_schema()), IOError);
    }
}

TEST_CASE("blank lines are skipped, quoted empty cells are kept") {
    TempDir dir("csv-blank");
    testsupport::write_text(dir.file("d.csv"), "l1\nA\n\nB\n\n");
    const LabelMatrix Y = load_labels_csv(dir.file("d.csv"), {}, ',', true);
    CHECK(Y.n_samples() == 2);

    testsupport::write_text(dir.file("q.csv"), "l1\nA\n\"\"\n");
    const LabelMatrix Q = load_labels_csv(dir.file("q.csv"), {}, ',', true);
    CHECK(Q.n_samples() == 2);
    CHECK(Q.row(1) == std::vector<std::string>{""});
}

TEST_CASE("quoted fields round-trip through save and load") {
    TempDir dir("csv-quotes");
    const LabelMatrix Y = LabelMatrix::from_rows(
        {{"he,llo", "say \"hi\""}, {"line\nbreak", "plain"}});
    const FeatureMatrix X = FeatureMatrix::from_rows({{0.25}, {-1.5}});
    DatasetSchema s;
    s.feature_columns = {"x"};
    s.label_columns = {"a", "b"};

    save_csv(dir.file("q.csv"), X, Y, s);
    const auto [X2, Y2] = load_csv(dir.file("q.csv"), s);
    CHECK(X2 == X);
    CHECK(Y2 == Y);
}

TEST_CASE("csv serialization is a fixed point") {
    Rng rng(73);
    TempDir dir("csv-fixed");
    DatasetSchema s;
    s.feature_columns = {"x0", "x1", "x2"};
    s.label_columns = {"y0", "y1"};

    FeatureMatrix X(6, 3);
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            X.at(i, j) = rng.normal() * std::pow(10.0, rng.uniform(-4, 4));
        }
    }
    const LabelMatrix Y = testsupport::random_label_matrix(rng, 6, 2, 3);

    save_csv(dir.file("a.csv"), X, Y, s);
    const auto [X1, Y1] = load_csv(dir.file("a.csv"), s);
    CHECK(X1 == X);  // 17 significant digits round-trip doubles exactly
    CHECK(Y1 == Y);

    save_csv(dir.file("b.csv"), X1, Y1, s);
    CHECK(testsupport::read_text(dir.file("a.csv")) ==
          testsupport::read_text(dir.file("b.csv")));
}

TEST_CASE("to_decimal and parse_double round-trip") {
    Rng rng(79);
    for (int trial = 0; trial < 200; ++trial) {
        const double v = rng.normal() * std::pow(10.0, rng.uniform(-12, 12));
        const double back = parse_double(to_decimal(v));
        CHECK(back == v);
    }
    CHECK_THROWS_AS(parse_double("12x"), ParseError);
}

TEST_CASE("model save/load round-trips exactly") {
    TempDir dir("model");
    const LabelMatrix Y = testsupport::mock_labels();
    const FeatureMatrix X = testsupport::mock_features();
    const Hierarchy h = build_hierarchy(Y);
    LearnerSpec spec;
    spec.epochs = 120;
    const HierModel m = fit_lcpn(h, X, Y, spec);

    save_model(m, dir.file("m.hcm"));
    const HierModel loaded = load_model(dir.file("m.hcm"));

    CHECK(loaded.strategy == m.strategy);
    CHECK(loaded.hierarchy == m.hierarchy);
    CHECK(loaded.spec == m.spec);
    CHECK(loaded.learners == m.learners);

    // Byte-identical when saved again.
    save_model(loaded, dir.file("m2.hcm"));
    CHECK(testsupport::read_text(dir.file("m.hcm")) ==
          testsupport::read_text(dir.file("m2.hcm")));

    // Identical predictions on the training features.
    CHECK(predict(loaded, X) == predict(m, X));
}

TEST_CASE("model loader rejects damaged files") {
    TempDir dir("model-bad");
    const LabelMatrix Y = testsupport::mock_labels();
    const Hierarchy h = build_hierarchy(Y);
    LearnerSpec spec;
    spec.epochs = 10;
    const HierModel m = fit_lcppn(h, testsupport::mock_features(), Y, spec);
    save_model(m, dir.file("m.hcm"));
    const std::string text = testsupport::read_text(dir.file("m.hcm"));

    SUBCASE("bumped version") {
        std::string bumped = text;
        const auto pos = bumped.find(" 1 ");
        REQUIRE(pos != std::string::npos);
        bumped.replace(pos, 3, " 2 ");
        CHECK_THROWS_AS(model_from_string(bumped), UnsupportedVersion);
    }
    SUBCASE("truncated body") {
        CHECK_THROWS_AS(model_from_string(text.substr(0, text.size() / 2)),
                        CorruptModel);
    }
    SUBCASE("bad magic") {
        CHECK_THROWS_AS(model_from_string("NOT-A-MODEL 1 00\nbody\n"), CorruptModel);
    }
    SUBCASE("edited body breaks the checksum") {
        std::string edited = text;
        edited[edited.size() - 3] ^= 1;
        CHECK_THROWS_AS(model_from_string(edited), CorruptModel);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_model(dir.file("absent.hcm")), IOError);
    }
}

TEST_CASE("prediction CSV writes one column per level") {
    TempDir dir("pred-csv");
    const PredictionMatrix pred = testsupport::mock_labels();
    save_predictions_csv(dir.file("p.csv"), pred, ',');
    CHECK(testsupport::read_text(dir.file("p.csv")) ==
          "level_1,level_2,level_3\n"
          "Animal,Mammal,Cat\n"
          "Animal,Reptile,Turtle\n");

    const LabelMatrix back = load_labels_csv(dir.file("p.csv"), {}, ',', true);
    CHECK(back == pred);
}
