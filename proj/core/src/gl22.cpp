namespace qgl {
}
