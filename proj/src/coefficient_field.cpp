#include "bdpg/coefficient_field.hpp"

#include "bdpg/errors.hpp"

namespace bdpg {

CoefficientField::CoefficientField(Matrix coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() != coeffs_.cols())
    throw DimensionError("coefficient field must be square");
}

}  // namespace bdpg
