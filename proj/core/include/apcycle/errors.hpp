#pragma once

#include <stdexcept>
#include <string>

namespace apcycle {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidNetwork : public Error {
public:
    using Error::Error;
};

class ZeroCoordinate : public Error {
public:
    ZeroCoordinate() : Error("point has a zero coordinate; Laurent systems live on the torus") {}
};

class SingularMixing : public Error {
public:
    using Error::Error;
};

class InvalidSignVector : public Error {
public:
    using Error::Error;
};

class NotACell : public Error {
public:
    using Error::Error;
};

class MalformedCell : public Error {
public:
    using Error::Error;
};

class DegenerateCoefficient : public Error {
public:
    using Error::Error;
};

class CertificateViolation : public Error {
public:
    using Error::Error;
};

}  // namespace apcycle
