#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "ncjet/calculus.hpp"

namespace ncjet {

using Json = nlohmann::ordered_json;

// Unreadable files, malformed JSON, missing fields, non-rational entries.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json ratToJson(const Rat& r);
Rat ratFromJson(const Json& j, const std::string& where);
Json vecToJson(const Vec& v);
Vec vecFromJson(const Json& j, int size, const std::string& where);
// rows of rationals; rows/cols < 0 accept any shape
Json matToJson(const Mat& m);
Mat matFromJson(const Json& j, int rows, int cols, const std::string& where);

// A calculus file before any axiom is checked.
struct CalculusSpec {
    std::string name = "calculus";
    std::vector<std::string> basis;
    Vec unit;
    std::vector<std::vector<Vec>> mult;
    int omegaDim = 0;
    std::vector<Mat> left, right;
    Mat d;
    int maxDegree = 2;
    Mat frame;  // optional free left frame of Ω^1, as columns
    std::vector<std::string> frameNames;
};

Json readJsonFile(const std::string& path);
CalculusSpec calculusSpecFromJson(const Json& j);
Json calculusToJson(const Calculus& c);
// algebra axioms, then bimodule and first order calculus axioms
Report validateSpec(const CalculusSpec& s);
// throws std::domain_error when validateSpec fails
CalculusPtr buildFromSpec(const CalculusSpec& s);

// { "source": ref, "target": ref, "matrix": [[rat]] }, refs "A" or "Omega1"
struct OpSpec {
    std::string source, target;
    Mat matrix;
};
OpSpec opSpecFromJson(const Json& j);

Json reportToJson(const Report& r);

}  // namespace ncjet
