namespace gdc {}
