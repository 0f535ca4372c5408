items = [1, 2, 3]
items[1] = 20
print(items[0])
print(items[1])
print(items[2])
