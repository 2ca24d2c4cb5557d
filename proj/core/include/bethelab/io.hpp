#ifndef BETHELAB_IO_HPP
#define BETHELAB_IO_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace bethe {

// Deterministic JSON document builder: insertion-ordered object keys, doubles
// formatted with 17 significant digits so identical runs emit identical bytes.
class JsonValue {
public:
    JsonValue() = default;  // null
    static JsonValue boolean(bool b);
    static JsonValue integer(std::int64_t i);
    static JsonValue number(double d);
    static JsonValue string(std::string s);
    static JsonValue array();
    static JsonValue object();

    JsonValue& push_back(JsonValue v);                      // array
    JsonValue& set(const std::string& key, JsonValue v);    // object
    std::string dump(int indent = 2) const;

private:
    enum class Kind { Null, Bool, Int, Double, String, Array, Object };
    Kind kind_ = Kind::Null;
    bool b_ = false;
    std::int64_t i_ = 0;
    double d_ = 0.0;
    std::string s_;
    std::vector<JsonValue> items_;
    std::vector<std::pair<std::string, JsonValue>> members_;

    void write(std::string& out, int indent, int depth) const;
};

// printf("%.17g") with non-finite values spelled out.
std::string format_double(double d);

std::string quote_json(const std::string& s);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// FNV-1a 64-bit content hash, hex-encoded.
std::string fnv1a64_hex(const std::string& bytes);

// CSV with a header row; every cell formatted deterministically.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

// Matrix exports: small header carrying dims and a dtype tag, then row-major
// payload.  CSV: "# rows cols f64" comment line; binary: "BMAT" magic,
// uint32 rows, uint32 cols, byte 'd', little-endian doubles.
std::string matrix_csv(const Eigen::MatrixXd& A);
std::string matrix_binary(const Eigen::MatrixXd& A);
Eigen::MatrixXd read_matrix_binary(const std::string& bytes);

} // namespace bethe

#endif
