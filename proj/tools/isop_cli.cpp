// placeholder while the library grows; replaced by the real CLI below
int main() { return 0; }
